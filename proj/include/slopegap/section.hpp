#pragma once

#include "slopegap/enumerate.hpp"
#include "slopegap/geometry.hpp"
#include "slopegap/veechgroup.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace slopegap {

/// A holonomy vector in the coordinates of the normalized cusp representative.
struct Vec2 {
    Rational x;
    Rational y;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct SectionTriangle {
    Rational x0;
    Rational y0;
    Rational n;
    Rational area_weight;

    /// Closure vertices, counter-clockwise: (0, 1/y0), (1, (1-x0)/y0 - n), (1, (1-x0)/y0).
    Polygon vertices() const;
    std::vector<HalfPlane> constraints() const;
    ConvexPiece piece() const;
    Rational area() const { return n / 2; }
    bool contains(const SectionPoint& p) const;
};

bool strip_membership(const Vec2& v, const SectionPoint& p);
/// y / (a (a x + b y)); requires strip membership.
Rational return_time(const Vec2& v, const SectionPoint& p);

struct Winner {
    HolVec raw;  ///< holonomy on the unnormalized representative
    Vec2 vec;    ///< normalized holonomy
    Rational return_time;
};

/// Everything needed to work inside one cusp's triangle.
class CuspContext {
public:
    CuspContext(std::shared_ptr<const OrbitGraph> graph, const CuspData& cusp, Rational area_weight);

    const CuspData& cusp() const { return cusp_; }
    const ShortestData& shortest() const { return sd_; }
    const SectionTriangle& triangle() const { return tri_; }
    const OrbitGraph& graph() const { return *graph_; }
    const Origami& representative() const;
    std::int64_t L() const { return sd_.L; }

    Vec2 normalize(const HolVec& v) const;
    /// Upper bound x/y < x0/y0 + n for strip members inside the triangle.
    Rational max_ratio() const { return tri_.x0 / tri_.y0 + tri_.n; }

    /// Saddle connections of the representative with 0 <= y <= ymax (raw) and every x a strip member can have.
    struct Pool {
        std::int64_t ymax = 0;
        std::map<std::int64_t, std::vector<std::int64_t>> by_y;
    };
    std::shared_ptr<const Pool> pool(std::int64_t ymax) const;

    /// Smallest height of a cylinder in the primitive direction d (raw holonomy units).
    std::int64_t min_cylinder_height(HolVec d) const;

    /// True when no saddle connection with larger x/y than w is a strip member anywhere in the
    /// triangle. Only decided for w whose strip boundary passes through the lower right vertex.
    bool unbeatable(const HolVec& w) const;

private:
    std::shared_ptr<const OrbitGraph> graph_;
    CuspData cusp_;
    ShortestData sd_;
    SectionTriangle tri_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const Pool> pool_;
    mutable std::map<std::pair<std::int64_t, std::int64_t>, bool> unbeatable_;
};

SectionTriangle build_triangle(const CuspData& c, const ShortestData& sd, const Rational& area_weight);

/// The winning saddle connection at p with its return time.
Winner winner_at(const CuspContext& ctx, const SectionPoint& p);

struct WinnerRegion {
    HolVec winner;
    Vec2 winner_vec;
    Polygon vertices;                  ///< closure, counter-clockwise
    std::vector<HalfPlane> constraints;  ///< edges of the closure, flagged closed when the edge belongs to the region
    std::vector<ConvexPiece> pieces;   ///< exact point set is the union of these
    Rational area;

    bool contains(const SectionPoint& p) const;
};

struct WinnerPartition {
    SectionTriangle triangle;
    std::vector<WinnerRegion> regions;
    /// Lower dimensional pieces of the boundary, with their winners.
    std::vector<std::pair<HolVec, ConvexPiece>> boundary;
    std::int64_t candidate_ymax = 0;

    /// Winner at p by region lookup; throws when p is outside the triangle.
    HolVec lookup(const SectionPoint& p) const;
    Rational total_area() const;
};

WinnerPartition compute_partition(const CuspContext& ctx);

/// Image of the base node of `graph` (at `node`) under a matrix sending the primitive direction d to (1, 0).
int direction_node(const OrbitGraph& graph, int node, HolVec d);

}  // namespace slopegap
