#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopegap/distribution.hpp"
#include "slopegap/geometry.hpp"
#include "slopegap/section.hpp"

#include <algorithm>
#include <set>

using namespace slopegap;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
SectionPoint pt(Rational a, Rational b) { return {std::move(a), std::move(b)}; }

SurfacePipeline pipeline(const char* name) { return build_pipeline(load_origami(std::string(SLOPEGAP_DATA_DIR "/") + name)); }

}  // namespace

TEST_CASE("clip and area") {
    Polygon square{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)};
    CHECK(area(square) == 1);
    Polygon half = clip(square, {1, 1, -1, false});  // a + b >= 1
    CHECK(area(half) == q(1, 2));
    CHECK(half.size() == 3);
    CHECK(clip(square, {1, 0, -2, false}).empty());
    Polygon seg = clip(square, {1, 0, -1, false});  // a >= 1: one edge
    CHECK(seg.size() == 2);
    CHECK(area(convex_hull({pt(0, 0), pt(2, 0), pt(1, 1), pt(1, q(1, 2)), pt(0, 2), pt(2, 2)})) == 4);
}

TEST_CASE("half-plane strictness") {
    HalfPlane h{1, 0, -1, true};
    CHECK_FALSE(h.contains(pt(1, 0)));
    CHECK(h.complement().contains(pt(1, 0)));
    ConvexPiece sq{{}, {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}};
    ConvexPiece edge = intersect(sq, HalfPlane{-1, 0, 0, false});  // a <= 0
    CHECK(edge.nonempty());
    ConvexPiece none = intersect(sq, HalfPlane{-1, 0, 0, true});  // a < 0
    CHECK_FALSE(none.nonempty());
}

TEST_CASE("L triangle") {
    auto pl = pipeline("L.origami");
    const SectionTriangle& t = pl.contexts.front()->triangle();
    CHECK(t.x0 == 1);
    CHECK(t.y0 == 2);
    CHECK(t.n == 1);
    Polygon v = t.vertices();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == pt(0, q(1, 2)));
    CHECK(v[1] == pt(1, -1));
    CHECK(v[2] == pt(1, 0));
    CHECK(t.area() == q(1, 2));
    // 1/2 - 3a/2 < b <= 1/2 - a/2, 0 < a <= 1
    CHECK(t.contains(pt(1, 0)));
    CHECK_FALSE(t.contains(pt(1, -1)));
    CHECK_FALSE(t.contains(pt(0, q(1, 2))));
    CHECK(t.contains(pt(q(1, 2), q(1, 4))));
    CHECK_FALSE(t.contains(pt(q(1, 2), q(-1, 4))));
}

TEST_CASE("strip membership and return time") {
    Vec2 v{1, 2};
    CHECK(strip_membership(v, pt(q(1, 4), q(5, 16))));
    CHECK_FALSE(strip_membership(v, pt(q(1, 2), q(1, 2))));
    CHECK(strip_membership(v, pt(q(1, 2), q(1, 4))));  // value exactly 1
    CHECK_FALSE(strip_membership(v, pt(q(1, 2), q(-1, 4))));  // value exactly 0
    CHECK(return_time(v, pt(q(1, 4), q(5, 16))) == q(64, 7));
    CHECK_THROWS(return_time(v, pt(q(1, 2), q(1, 2))));
}

TEST_CASE("winner_at on hand-checked points") {
    auto torus = pipeline("torus.origami");
    Winner w = winner_at(*torus.contexts.front(), pt(q(1, 2), q(1, 4)));
    CHECK(w.raw == HolVec{1, 1});
    CHECK(w.return_time == q(8, 3));

    auto l = pipeline("L.origami");
    const CuspContext& h = *l.contexts.front();
    w = winner_at(h, pt(q(1, 4), q(5, 16)));
    CHECK(w.raw == HolVec{1, 2});
    CHECK(w.return_time == q(64, 7));
    CHECK(winner_at(h, pt(q(1, 2), q(-1, 8))).raw == HolVec{2, 2});
    CHECK_THROWS_AS(winner_at(h, pt(2, 0)), InputError);
}

TEST_CASE("L partition") {
    auto l = pipeline("L.origami");
    WinnerPartition p = compute_partition(*l.contexts.front());
    REQUIRE(p.regions.size() == 3);
    std::set<HolVec> winners;
    for (const auto& r : p.regions) winners.insert(r.winner);
    CHECK(winners == std::set<HolVec>{{1, 2}, {2, 3}, {2, 2}});
    CHECK(p.total_area() == q(1, 2));
    // (1,2) wins where 1/2 - a < b <= 1/2 - a/2 and 1/3 - 2a/3 < b.
    for (const auto& r : p.regions)
        if (r.winner == HolVec{1, 2}) CHECK(r.area == q(5, 24));
}

TEST_CASE("partition lookup agrees with winner_at on region boundaries") {
    auto l = pipeline("L.origami");
    const CuspContext& h = *l.contexts.front();
    WinnerPartition p = compute_partition(h);
    std::vector<SectionPoint> probes;
    for (const auto& r : p.regions)
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
            const auto& a = r.vertices[i];
            const auto& b = r.vertices[(i + 1) % r.vertices.size()];
            probes.push_back(a);
            probes.push_back(pt((a.a + b.a) / 2, (a.b + b.b) / 2));
            probes.push_back(pt((a.a + 2 * b.a) / 3, (a.b + 2 * b.b) / 3));
        }
    int tested = 0;
    for (const auto& x : probes) {
        if (!h.triangle().contains(x)) continue;
        CHECK(p.lookup(x) == winner_at(h, x).raw);
        ++tested;
    }
    CHECK(tested > 10);
}

TEST_CASE("every cusp of L partitions exactly") {
    auto l = pipeline("L.origami");
    Rational weight = 0;
    for (const auto& ctx : l.contexts) {
        WinnerPartition p = compute_partition(*ctx);
        CHECK(p.total_area() == ctx->triangle().area());
        weight += ctx->triangle().area_weight;
    }
    Rational expected = 0;
    for (const auto& c : l.cusps) expected += c.n / 2;
    CHECK(weight == expected);
    CHECK(l.contexts.size() <= l.cusps.size());
}
