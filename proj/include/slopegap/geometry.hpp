#pragma once

#include "slopegap/rational.hpp"

#include <vector>

namespace slopegap {

/// A point (a, b) of the section plane.
struct SectionPoint {
    Rational a;
    Rational b;
    friend bool operator==(const SectionPoint&, const SectionPoint&) = default;
};

/// ca*a + cb*b + c >= 0, or > 0 when `strict`.
struct HalfPlane {
    Rational ca;
    Rational cb;
    Rational c;
    bool strict = false;

    Rational eval(const SectionPoint& p) const { return ca * p.a + cb * p.b + c; }
    bool contains(const SectionPoint& p) const {
        Rational v = eval(p);
        return strict ? v > 0 : v >= 0;
    }
    /// The complementary half-plane.
    HalfPlane complement() const { return {-ca, -cb, -c, !strict}; }
};

using Polygon = std::vector<SectionPoint>;

/// Counter-clockwise closure of the set cut out by `constraints`.
struct ConvexPiece {
    std::vector<HalfPlane> constraints;
    Polygon vertices;

    bool contains(const SectionPoint& p) const;
    /// True when the set (not only its closure) has a point.
    bool nonempty() const;
};

/// Clip a convex polygon (possibly degenerate) by the closed version of `h`.
Polygon clip(const Polygon& poly, const HalfPlane& h);
ConvexPiece intersect(const ConvexPiece& piece, const HalfPlane& h);

Rational signed_area(const Polygon& poly);
Rational area(const Polygon& poly);
SectionPoint centroid_of_vertices(const Polygon& poly);
/// Convex hull, counter-clockwise, without collinear points.
Polygon convex_hull(std::vector<SectionPoint> pts);
/// Drop repeated and collinear vertices.
Polygon simplify(const Polygon& poly);

}  // namespace slopegap
