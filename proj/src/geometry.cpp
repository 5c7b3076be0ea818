#include "slopegap/geometry.hpp"

#include <algorithm>

namespace slopegap {

namespace {

Rational cross(const SectionPoint& o, const SectionPoint& p, const SectionPoint& q) {
    return (p.a - o.a) * (q.b - o.b) - (p.b - o.b) * (q.a - o.a);
}

}  // namespace

bool ConvexPiece::contains(const SectionPoint& p) const {
    for (const auto& h : constraints)
        if (!h.contains(p)) return false;
    return true;
}

bool ConvexPiece::nonempty() const {
    if (vertices.empty()) return false;
    if (vertices.size() >= 3 && area(vertices) > 0) return true;
    // Lower dimensional: a segment or a point. Its relative interior decides unless it is a point.
    if (contains(centroid_of_vertices(vertices))) return true;
    for (const auto& v : vertices)
        if (contains(v)) return true;
    return false;
}

Polygon clip(const Polygon& poly, const HalfPlane& h) {
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    if (n == 1) {
        if (h.eval(poly[0]) >= 0) out.push_back(poly[0]);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const SectionPoint& p = poly[i];
        const SectionPoint& q = poly[(i + 1) % n];
        Rational vp = h.eval(p);
        Rational vq = h.eval(q);
        if (vp >= 0) out.push_back(p);
        if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
            Rational t = vp / (vp - vq);
            out.push_back({p.a + t * (q.a - p.a), p.b + t * (q.b - p.b)});
        }
    }
    return simplify(out);
}

ConvexPiece intersect(const ConvexPiece& piece, const HalfPlane& h) {
    ConvexPiece out;
    out.vertices = clip(piece.vertices, h);
    if (out.vertices.empty()) return out;
    out.constraints = piece.constraints;
    out.constraints.push_back(h);
    return out;
}

Rational signed_area(const Polygon& poly) {
    Rational s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        s += p.a * q.b - q.a * p.b;
    }
    return s / 2;
}

Rational area(const Polygon& poly) {
    Rational s = signed_area(poly);
    return s < 0 ? Rational(-s) : s;
}

SectionPoint centroid_of_vertices(const Polygon& poly) {
    SectionPoint c{0, 0};
    for (const auto& p : poly) {
        c.a += p.a;
        c.b += p.b;
    }
    Rational k(static_cast<long>(poly.size()));
    c.a /= k;
    c.b /= k;
    return c;
}

Polygon convex_hull(std::vector<SectionPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const SectionPoint& p, const SectionPoint& q) {
        return p.a < q.a || (p.a == q.a && p.b < q.b);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Polygon hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

Polygon simplify(const Polygon& poly) {
    Polygon out;
    for (const auto& p : poly)
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    if (out.size() < 3) return out;
    if (signed_area(out) == 0) {
        auto less = [](const SectionPoint& p, const SectionPoint& q) { return p.a < q.a || (p.a == q.a && p.b < q.b); };
        auto [lo, hi] = std::minmax_element(out.begin(), out.end(), less);
        if (*lo == *hi) return {*lo};
        return {*lo, *hi};
    }
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& prev = out[(i + out.size() - 1) % out.size()];
            const auto& next = out[(i + 1) % out.size()];
            if (cross(prev, out[i], next) == 0) {
                out.erase(out.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace slopegap
