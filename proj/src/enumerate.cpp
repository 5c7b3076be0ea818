#include "slopegap/enumerate.hpp"

#include "slopegap/error.hpp"

#include <algorithm>
#include <optional>

namespace slopegap {

bool SaddleConnectionSet::contains(const HolVec& v) const {
    return std::binary_search(vectors.begin(), vectors.end(), v);
}

namespace {

struct Frame {
    HolVec c1;
    HolVec c2;
    int node;  // M^{-1} applied to the base, M = (c1 c2)
};

HolVec mediant(const Frame& f) { return {f.c1.x + f.c2.x, f.c1.y + f.c2.y}; }

std::int64_t linf(const HolVec& v) { return std::max(v.x, v.y); }

}  // namespace

void for_each_saddle_direction(const OrbitGraph& graph, int node, std::int64_t R, const DirectionVisitor& visit,
                               bool lower_octant_only) {
    if (R < 1) return;
    auto emit = [&](HolVec d, int image) {
        const auto& lengths = graph.horizontal_lengths[static_cast<std::size_t>(image)];
        if (!lengths.empty() && lengths.front() * linf(d) <= R) visit(d, lengths);
    };
    emit({1, 0}, node);

    std::vector<Frame> stack;
    std::optional<Frame> cur = Frame{{1, 0}, {0, 1}, node};
    while (cur || !stack.empty()) {
        while (cur) {
            stack.push_back(*cur);
            Frame left{cur->c1, mediant(*cur), graph.step(cur->node, Generator::Tinv)};
            cur.reset();
            if (linf(mediant(left)) <= R) cur = left;
        }
        Frame f = stack.back();
        stack.pop_back();
        HolVec d = mediant(f);
        int image = graph.lower_shear_inv[static_cast<std::size_t>(f.node)];
        emit(d, image);
        if (lower_octant_only && d.x == 1 && d.y == 1) break;
        Frame right{d, f.c2, image};
        if (linf(mediant(right)) <= R) cur = right;
    }
    if (!lower_octant_only) emit({0, 1}, graph.step(node, Generator::Sinv));
}

SaddleConnectionSet enumerate_saddle_connections(const OrbitGraph& graph, int node, std::int64_t R) {
    SaddleConnectionSet out;
    out.bound_R = Rational(static_cast<long>(R));
    for_each_saddle_direction(graph, node, R, [&](HolVec d, const std::vector<std::int64_t>& lengths) {
        for (std::int64_t k : lengths) {
            if (k * linf(d) > R) break;
            out.vectors.push_back({k * d.x, k * d.y});
        }
    });
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

SaddleConnectionSet enumerate_saddle_connections(const Origami& o, const Rational& R) {
    if (R <= 0) throw InputError("enumeration bound must be positive");
    OrbitGraph graph = sl2z_orbit(o);
    SaddleConnectionSet out = enumerate_saddle_connections(graph, 0, floor_int(R));
    out.bound_R = R;
    return out;
}

ShortestData shortest_data(const OrbitGraph& graph, int node) {
    const Origami& o = graph.nodes[static_cast<std::size_t>(node)];
    ShortestData sd;
    const auto& lengths = graph.horizontal_lengths[static_cast<std::size_t>(node)];
    if (lengths.empty()) throw InvariantError("no horizontal saddle connection");
    sd.L = lengths.front();
    CylinderDecomposition cyl = horizontal_cylinders(o);
    Rational y0 = cyl.cylinders.front().height;
    for (const auto& c : cyl.cylinders) y0 = std::min(y0, c.height);
    sd.y0 = floor_int(y0);
    // The search for y0 is bounded by area / L; every such height is a cylinder height.
    if (sd.y0 * sd.L > o.size()) throw InvariantError("least vertical component exceeds area / L");
    for (std::int64_t R = std::max<std::int64_t>(o.size(), 2);; R *= 2) {
        SaddleConnectionSet s = enumerate_saddle_connections(graph, node, R);
        std::int64_t best = 0;
        std::int64_t lowest = 0;
        for (const auto& v : s.vectors) {
            if (v.y > 0 && (lowest == 0 || v.y < lowest)) lowest = v.y;
            if (v.y == sd.y0 && v.x > 0 && (best == 0 || v.x < best)) best = v.x;
        }
        if (lowest != sd.y0) throw InvariantError("least vertical component differs from least cylinder height");
        if (best > 0) {
            sd.x0 = best;
            return sd;
        }
        if (R > (std::int64_t{1} << 20)) throw InvariantError("no saddle connection with positive x at height y0");
    }
}

ShortestData shortest_data(const Origami& o) {
    OrbitGraph graph = sl2z_orbit(o);
    return shortest_data(graph, 0);
}

}  // namespace slopegap
