#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopegap/oracle.hpp"

#include <cmath>
#include <numeric>

using namespace slopegap;

namespace {

Origami load(const char* name) { return load_origami(std::string(SLOPEGAP_DATA_DIR "/") + name); }
Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST_CASE("trace on the torus") {
    auto s = trace_enumerate(Origami::torus(), Rational(3));
    std::vector<HolVec> expect;
    for (std::int64_t x = 0; x <= 3; ++x)
        for (std::int64_t y = 0; y <= 3; ++y)
            if (std::gcd(x, y) == 1) expect.push_back({x, y});
    CHECK(s.vectors == expect);
}

TEST_CASE("trace on L") {
    Origami l = load("L.origami");
    auto s = trace_enumerate(l, Rational(10));
    CHECK(s.contains({1, 2}));
    CHECK(s.contains({2, 3}));
    CHECK(s.contains({1, 0}));
    CHECK(s.contains({0, 2}));
    CHECK(s.contains({0, 3}));
    CHECK_FALSE(s.contains({0, 5}));
    for (const auto& v : s.vectors) CHECK(v.y != 1);
    CHECK(s.vectors == enumerate_saddle_connections(l, Rational(10)).vectors);
}

TEST_CASE("trace on the two-square cylinder") {
    auto s = trace_enumerate(load("cyl2.origami"), Rational(4));
    CHECK(s.contains({2, 0}));
    CHECK_FALSE(s.contains({1, 0}));
    CHECK(s.contains({0, 1}));
    CHECK_FALSE(s.contains({1, 1}));
    CHECK(s.contains({2, 1}));
}

TEST_CASE("brute force winner") {
    auto t = build_pipeline(Origami::torus());
    CHECK(brute_force_winner(*t.contexts.front(), {q(1, 2), q(1, 4)}) == HolVec{1, 1});

    auto l = build_pipeline(load("L.origami"));
    const CuspContext& h = *l.contexts.front();
    BruteForceWinner brute(h.representative(), h.L(), h.triangle());
    CHECK(brute({q(1, 4), q(5, 16)}) == HolVec{1, 2});
    CHECK(brute({q(1, 2), q(-1, 8)}) == HolVec{2, 2});
    CHECK(brute({q(9, 10), q(-3, 10)}) == HolVec{2, 3});
    CHECK(brute.window() >= 16);
    CHECK_THROWS_AS(brute({q(2), q(0)}), InputError);
}

TEST_CASE("sampled points lie in the triangle and follow the seed") {
    auto l = build_pipeline(load("L.origami"));
    for (const auto& ctx : l.contexts) {
        std::mt19937_64 a(5), b(5);
        for (int i = 0; i < 50; ++i) {
            SectionPoint p = sample_triangle(ctx->triangle(), a);
            CHECK(ctx->triangle().contains(p));
            CHECK(p == sample_triangle(ctx->triangle(), b));
        }
    }
}

TEST_CASE("monte carlo against the torus limit") {
    auto t = build_pipeline(Origami::torus());
    AnalyticCDF G = analytic_cdf(t);
    std::vector<long double> grid{0.5L, 1.5L, 2, 3, 5, 10};
    MonteCarloCdf mc = monte_carlo_cdf(t.contexts, grid, 20000, 11);
    MonteCarloCdf again = monte_carlo_cdf(t.contexts, grid, 20000, 11);
    CHECK(mc.estimate == again.estimate);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        long double g = G.G(grid[i]);
        long double se = std::sqrt(g * (1 - g) / 20000);
        CHECK(std::fabs(mc.estimate[i] - g) <= 4 * se + 1e-12L);
    }
    CHECK(mc.estimate[0] == 0);
}

TEST_CASE("quadrature against closed form") {
    auto l = build_pipeline(load("L.origami"));
    AnalyticCDF G = analytic_cdf(l);
    for (const auto& pc : G.pieces())
        for (const auto& r : pc.partition.regions)
            for (long double t : {0.7L, 2.0L, 9.0L, 150.0L}) {
                long double a = region_tail_area(r, t), b = quadrature_tail_area(r, t);
                CHECK(std::fabs(a - b) <= 1e-10L * std::max(std::fabs(a), 1e-30L));
            }
    // Torus at t = 3: (log 3) / 3 - 1/6.
    auto tor = analytic_cdf(build_pipeline(Origami::torus()));
    long double a = quadrature_tail_area(tor.pieces().front().partition.regions.front(), 3);
    CHECK(static_cast<double>(a) == doctest::Approx(std::log(3.0) / 3 - 1.0 / 6).epsilon(1e-14));
}
