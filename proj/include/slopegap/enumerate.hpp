#pragma once

#include "slopegap/origami.hpp"
#include "slopegap/veechgroup.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace slopegap {

struct SaddleConnectionSet {
    /// Sorted; one vector per +/- pair, inside 0 <= x, y <= R.
    std::vector<HolVec> vectors;
    Rational bound_R;
    bool contains(const HolVec& v) const;
};

/// Called once per primitive direction (p, q), p, q >= 0, that carries a saddle connection in the
/// window; `lengths` are the saddle-connection multiples k of (p, q), ascending (k*max(p,q) may exceed R).
using DirectionVisitor = std::function<void(HolVec direction, const std::vector<std::int64_t>& lengths)>;

/// Stern-Brocot walk over the orbit graph. Directions come in increasing slope order; with
/// `lower_octant_only` only slopes in [0, 1] are visited.
void for_each_saddle_direction(const OrbitGraph& graph, int node, std::int64_t R, const DirectionVisitor& visit,
                               bool lower_octant_only = false);

SaddleConnectionSet enumerate_saddle_connections(const Origami& o, const Rational& R);
SaddleConnectionSet enumerate_saddle_connections(const OrbitGraph& graph, int node, std::int64_t R);

struct ShortestData {
    std::int64_t L = 0;   ///< shortest horizontal saddle connection
    std::int64_t y0 = 0;  ///< least positive vertical component
    std::int64_t x0 = 0;  ///< least positive horizontal component at height y0
};

ShortestData shortest_data(const Origami& o);
ShortestData shortest_data(const OrbitGraph& graph, int node);

}  // namespace slopegap
