#include "slopegap/section.hpp"

#include "slopegap/error.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace slopegap {

Polygon SectionTriangle::vertices() const {
    Rational top = (1 - x0) / y0;
    return {{0, 1 / y0}, {1, top - n}, {1, top}};
}

std::vector<HalfPlane> SectionTriangle::constraints() const {
    return {
        {1, 0, 0, true},
        {-1, 0, 1, false},
        {-x0 / y0, -1, 1 / y0, false},
        {x0 / y0 + n, 1, -1 / y0, true},
    };
}

ConvexPiece SectionTriangle::piece() const { return {constraints(), vertices()}; }

bool SectionTriangle::contains(const SectionPoint& p) const {
    for (const auto& h : constraints())
        if (!h.contains(p)) return false;
    return true;
}

bool strip_membership(const Vec2& v, const SectionPoint& p) {
    if (v.y <= 0) throw InputError("strip needs a vector with positive y");
    if (p.a <= 0) throw InputError("strip needs a > 0");
    Rational value = p.a * v.x + p.b * v.y;
    return value > 0 && value <= 1;
}

Rational return_time(const Vec2& v, const SectionPoint& p) {
    if (!strip_membership(v, p)) throw InputError("return time outside the strip");
    return v.y / (p.a * (p.a * v.x + p.b * v.y));
}

SectionTriangle build_triangle(const CuspData& c, const ShortestData& sd, const Rational& area_weight) {
    if (sd.x0 <= 0 || sd.y0 <= 0 || sd.L <= 0) throw InvariantError("shortest data must be positive");
    SectionTriangle t;
    const Rational L(static_cast<long>(sd.L));
    t.x0 = Rational(static_cast<long>(sd.x0)) / L;
    t.y0 = Rational(static_cast<long>(sd.y0)) * L;
    t.n = c.n;
    t.area_weight = area_weight;
    if (t.n <= 0) throw InvariantError("triangle depth must be positive");
    return t;
}

int direction_node(const OrbitGraph& graph, int node, HolVec d) {
    if (d.x < 0 || d.y < 0 || (d.x == 0 && d.y == 0) || std::gcd(d.x, d.y) != 1)
        throw InputError("direction must be primitive with nonnegative entries");
    if (d.y == 0) return node;
    if (d.x == 0) return graph.step(node, Generator::Sinv);
    HolVec c1{1, 0}, c2{0, 1};
    int x = node;
    while (true) {
        HolVec m{c1.x + c2.x, c1.y + c2.y};
        if (m == d) return graph.lower_shear_inv[static_cast<std::size_t>(x)];
        if (d.y * m.x < m.y * d.x) {
            c2 = m;
            x = graph.step(x, Generator::Tinv);
        } else {
            c1 = m;
            x = graph.lower_shear_inv[static_cast<std::size_t>(x)];
        }
    }
}

CuspContext::CuspContext(std::shared_ptr<const OrbitGraph> graph, const CuspData& cusp, Rational area_weight)
    : graph_(std::move(graph)), cusp_(cusp) {
    sd_ = shortest_data(*graph_, cusp_.representative);
    if (Rational(static_cast<long>(sd_.L)) != cusp_.L) throw InvariantError("cusp L disagrees with shortest data");
    tri_ = build_triangle(cusp_, sd_, area_weight);
}

const Origami& CuspContext::representative() const { return graph_->nodes[static_cast<std::size_t>(cusp_.representative)]; }

Vec2 CuspContext::normalize(const HolVec& v) const {
    const Rational L(static_cast<long>(sd_.L));
    return {Rational(static_cast<long>(v.x)) / L, Rational(static_cast<long>(v.y)) * L};
}

std::shared_ptr<const CuspContext::Pool> CuspContext::pool(std::int64_t ymax) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (pool_ && pool_->ymax >= ymax) return pool_;
    auto p = std::make_shared<Pool>();
    p->ymax = ymax;
    const Rational L2(static_cast<long>(sd_.L * sd_.L));
    // Strip members satisfy x < (x0/y0 + n) y in normalized coordinates.
    Rational xbound = max_ratio() * L2 * Rational(static_cast<long>(ymax));
    std::int64_t R = std::max(ymax, floor_int(xbound) + 1);
    SaddleConnectionSet s = enumerate_saddle_connections(*graph_, cusp_.representative, R);
    for (const auto& v : s.vectors)
        if (v.y > 0 && v.y <= ymax) p->by_y[v.y].push_back(v.x);
    for (auto& [y, xs] : p->by_y) std::sort(xs.begin(), xs.end());
    pool_ = p;
    return pool_;
}

std::int64_t CuspContext::min_cylinder_height(HolVec d) const {
    int img = direction_node(*graph_, cusp_.representative, d);
    CylinderDecomposition cyl = horizontal_cylinders(graph_->nodes[static_cast<std::size_t>(img)]);
    Rational h = cyl.cylinders.front().height;
    for (const auto& c : cyl.cylinders) h = std::min(h, c.height);
    return floor_int(h);
}

bool CuspContext::unbeatable(const HolVec& w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = unbeatable_.find({w.x, w.y});
        if (it != unbeatable_.end()) return it->second;
    }
    Vec2 v = normalize(w);
    bool result = false;
    if (w.y > 0 && v.x / v.y == max_ratio() - 1 / tri_.y0) {
        // For u with larger x/y, a x_u + b y_u exceeds cross(w, u) / y_w on the whole triangle,
        // and cross(w, u) >= g * h_min.
        std::int64_t g = std::gcd(w.x, w.y);
        HolVec prim{w.x / g, w.y / g};
        result = Rational(static_cast<long>(g * min_cylinder_height(prim))) >= v.y;
    }
    std::lock_guard<std::mutex> lock(mu_);
    unbeatable_[{w.x, w.y}] = result;
    return result;
}

namespace {

/// p = (A/D, B/D) with integer A, B and D > 0.
struct IntPoint {
    mpz_class A, B, D;
    explicit IntPoint(const SectionPoint& p) {
        mpz_lcm(D.get_mpz_t(), p.a.get_den_mpz_t(), p.b.get_den_mpz_t());
        A = p.a.get_num() * (D / p.a.get_den());
        B = p.b.get_num() * (D / p.b.get_den());
    }
};

mpz_class fdiv(const mpz_class& n, const mpz_class& d) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

mpz_class cdiv(const mpz_class& n, const mpz_class& d) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

/// First element of the sorted list above `bound`.
std::vector<std::int64_t>::const_iterator xms_upper(const std::vector<std::int64_t>& xs, const mpz_class& bound) {
    if (xs.empty() || bound >= mpz_class(static_cast<long>(xs.back()))) return xs.end();
    return std::upper_bound(xs.begin(), xs.end(), bound.get_si());
}

}  // namespace

Winner winner_at(const CuspContext& ctx, const SectionPoint& p) {
    if (!ctx.triangle().contains(p)) throw InputError("point outside the section triangle");
    const IntPoint ip(p);
    const mpz_class L(static_cast<long>(ctx.L()));
    const mpz_class L2 = L * L;
    const mpz_class DL = ip.D * L;

    std::int64_t ymax = 4 * ctx.shortest().y0;
    while (true) {
        auto pool = ctx.pool(ymax);
        bool found = false;
        std::int64_t bx = 0, by = 0;
        mpz_class bnum;  // A*bx + B*by*L^2, positive
        bool complete = false;
        for (const auto& [Y, xs] : pool->by_y) {
            if (found && mpz_class(static_cast<long>(Y)) * bnum >= mpz_class(static_cast<long>(by)) * DL) {
                complete = true;
                break;
            }
            mpz_class t = ip.B * L2 * static_cast<long>(Y);
            mpz_class xmax = fdiv(DL - t, ip.A);
            if (xmax < 0) continue;
            auto it = xms_upper(xs, xmax);
            if (it == xs.begin()) continue;
            std::int64_t X = *std::prev(it);
            if (ip.A * static_cast<long>(X) + t <= 0) continue;
            if (!found || X * by > bx * Y) {
                found = true;
                bx = X;
                by = Y;
                bnum = ip.A * static_cast<long>(X) + t;
            }
        }
        if (found && !complete && ctx.unbeatable({bx, by})) complete = true;
        if (found && !complete) {
            // Beaters have y < by * D * L / bnum.
            mpz_class need = cdiv(mpz_class(static_cast<long>(by)) * DL, bnum) - 1;
            if (need <= pool->ymax) complete = true;
            else if (!need.fits_slong_p() || need > mpz_class(1L << 24)) throw InvariantError("winner search bound too large");
            else ymax = std::max(need.get_si(), 2 * pool->ymax);
        } else if (!found) {
            if (pool->ymax > (1L << 24)) throw InvariantError("no strip contains the point");
            ymax = 2 * pool->ymax;
        }
        if (complete) {
            Winner w;
            w.raw = {bx, by};
            w.vec = ctx.normalize(w.raw);
            mpq_class rt(mpz_class(static_cast<long>(by)) * L2 * ip.D * ip.D, ip.A * bnum);
            rt.canonicalize();
            w.return_time = rt;
            return w;
        }
    }
}


bool WinnerRegion::contains(const SectionPoint& p) const {
    for (const auto& piece : pieces)
        if (piece.contains(p)) return true;
    return false;
}

HolVec WinnerPartition::lookup(const SectionPoint& p) const {
    if (!triangle.contains(p)) throw InputError("point outside the section triangle");
    for (const auto& r : regions)
        if (r.contains(p)) return r.winner;
    for (const auto& [w, piece] : boundary)
        if (piece.contains(p)) return w;
    throw InvariantError("partition does not cover the point");
}

Rational WinnerPartition::total_area() const {
    Rational s = 0;
    for (const auto& r : regions) s += r.area;
    return s;
}

namespace {

struct Candidate {
    HolVec raw;
    Vec2 vec;
    HalfPlane lower;  // x a + y b > 0
    HalfPlane upper;  // x a + y b <= 1
};

struct Assigned {
    std::size_t candidate;
    ConvexPiece piece;
};

HalfPlane edge_halfplane(const SectionPoint& P, const SectionPoint& Q, bool closed) {
    Rational da = Q.a - P.a, db = Q.b - P.b;
    return {-db, da, db * P.a - da * P.b, !closed};
}

/// Winner order: larger x/y first, then smaller y, then smaller x.
bool winner_order(const HolVec& u, const HolVec& v) {
    __int128 lhs = static_cast<__int128>(u.x) * v.y, rhs = static_cast<__int128>(v.x) * u.y;
    if (lhs != rhs) return lhs > rhs;
    if (u.y != v.y) return u.y < v.y;
    return u.x < v.x;
}

/// Split `piece` by the strip of `c`; returns false when nothing lies inside the strip.
bool split(const ConvexPiece& piece, const Candidate& c, std::vector<ConvexPiece>& rest, ConvexPiece& inside) {
    Rational lo, hi;
    bool first = true;
    for (const auto& q : piece.vertices) {
        Rational v = c.vec.x * q.a + c.vec.y * q.b;
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    if (hi <= 0 || lo > 1) {
        rest.push_back(piece);
        return false;
    }
    if (lo > 0 && hi <= 1) {
        inside = piece;
        inside.constraints.push_back(c.lower);
        inside.constraints.push_back(c.upper);
        return true;
    }
    ConvexPiece below = intersect(piece, c.lower.complement());
    ConvexPiece above = intersect(piece, c.upper.complement());
    inside = intersect(intersect(piece, c.lower), c.upper);
    if (below.nonempty()) rest.push_back(std::move(below));
    if (above.nonempty()) rest.push_back(std::move(above));
    return inside.nonempty();
}

/// Least pool height that proves no saddle connection of higher priority than w is a strip member
/// on the piece with closure `verts`; -1 when the pool cannot prove it at any height.
///
/// With c = cross(u, w) > 0, y_w (a x_u + b y_u) = y_u (a x_w + b y_w) + a c. Writing
/// phi = a x_w + b y_w + a, a beater has min(y_u, c) <= y_w / min phi. Beaters with small y_u are in
/// the pool; on each line of fixed c the strip value only grows with y_u, so one vector on the line
/// that misses the piece rules out every later one.
std::int64_t certify_ymax(const CuspContext& ctx, const Candidate& w, const Polygon& verts, const CuspContext::Pool& pool) {
    const std::int64_t L = ctx.L();
    const Rational Lq(static_cast<long>(L));
    const Rational& yw = w.vec.y;
    Rational phi_min;
    bool first = true;
    for (const auto& q : verts) {
        Rational phi = w.vec.x * q.a + w.vec.y * q.b + q.a;
        if (first || phi < phi_min) phi_min = phi;
        first = false;
    }
    if (phi_min <= 0) return -1;
    const Rational M = yw / phi_min;
    std::int64_t need = floor_int(M / Lq) + 1;
    const std::int64_t cmax = floor_int(M);
    if (cmax < 1) return need;

    const std::int64_t Xw = w.raw.x, Yw = w.raw.y;
    const std::int64_t g = std::gcd(Xw, Yw);
    const std::int64_t cmin = std::max<std::int64_t>(1, g * ctx.min_cylinder_height({Xw / g, Yw / g}));
    std::map<std::int64_t, bool> covered;
    for (const auto& [Y, xs] : pool.by_y)
        for (std::int64_t X : xs) {
            __int128 c = static_cast<__int128>(X) * Yw - static_cast<__int128>(Xw) * Y;
            if (c >= cmin && c <= cmax) covered[static_cast<std::int64_t>(c)] = true;
        }

    // Lattice points on cross(u, w) = c: u = u0 + k w/g.
    const std::int64_t px = Xw / g, py = Yw / g;
    auto [gg, s, t] = [](std::int64_t a, std::int64_t b) {
        std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            std::int64_t q = old_r / r;
            std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
            std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
            std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
        }
        return std::make_tuple(old_r, old_s, old_t);
    }(py, px);
    (void)gg;
    for (std::int64_t c = cmin; c <= cmax; ++c) {
        if (c % g != 0 || covered.count(c)) continue;
        // X py - Y px = c / g, solved by X = s c/g, Y = -t c/g.
        const std::int64_t cg = c / g;
        std::int64_t X0 = s * cg, Y0 = -t * cg;
        std::int64_t k = (pool.ymax - Y0) >= 0 ? (pool.ymax - Y0) / py + 1 : -((Y0 - pool.ymax - 1) / py);
        std::int64_t X = X0 + k * px, Y = Y0 + k * py;
        Vec2 u = ctx.normalize({X, Y});
        bool misses = true;
        for (const auto& q : verts)
            if (u.x * q.a + u.y * q.b <= 1) misses = false;
        if (misses) continue;
        const Rational cq(static_cast<long>(c));
        for (const auto& q : verts) {
            Rational lw = w.vec.x * q.a + w.vec.y * q.b;
            Rational rest = yw - q.a * cq;
            if (lw == 0) {
                if (rest >= 0) return -1;
                continue;
            }
            if (rest >= 0) need = std::max(need, floor_int(rest / (Lq * lw)) + 1);
        }
    }
    return need;
}

}  // namespace

WinnerPartition compute_partition(const CuspContext& ctx) {
    const SectionTriangle& tri = ctx.triangle();
    const Rational C = ctx.max_ratio();
    const Rational Lq(static_cast<long>(ctx.L()));
    const std::int64_t L2 = ctx.L() * ctx.L();
    const ShortestData& sd = ctx.shortest();

    std::int64_t ymax = 4 * sd.y0;
    const std::int64_t cap = std::int64_t{1} << 14;
    while (true) {
        if (ymax > cap) throw InvariantError("candidate bound exhausted without covering the triangle");
        auto pool = ctx.pool(ymax);
        ymax = pool->ymax;
        std::vector<Candidate> cands;
        for (const auto& [Y, xs] : pool->by_y) {
            if (Y > ymax) break;
            for (std::int64_t X : xs) {
                // x0/y0 <= x/y < x0/y0 + n, in raw units
                if (static_cast<__int128>(X) * sd.y0 < static_cast<__int128>(sd.x0) * Y) continue;
                if (Rational(static_cast<long>(X)) >= C * Rational(static_cast<long>(L2 * Y))) continue;
                Candidate c;
                c.raw = {X, Y};
                c.vec = ctx.normalize(c.raw);
                c.lower = {c.vec.x, c.vec.y, 0, true};
                c.upper = {-c.vec.x, -c.vec.y, 1, false};
                cands.push_back(std::move(c));
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& u, const Candidate& v) { return winner_order(u.raw, v.raw); });

        std::vector<ConvexPiece> open{tri.piece()};
        std::vector<Assigned> assigned;
        for (std::size_t ci = 0; ci < cands.size() && !open.empty(); ++ci) {
            std::vector<ConvexPiece> rest;
            for (const auto& piece : open) {
                ConvexPiece inside;
                if (split(piece, cands[ci], rest, inside)) assigned.push_back({ci, std::move(inside)});
            }
            open = std::move(rest);
        }
        if (!open.empty()) {
            ymax *= 2;
            continue;
        }

        std::int64_t need = 0;
        bool hopeless = false;
        for (const auto& as : assigned) {
            const Candidate& w = cands[as.candidate];
            if (ctx.unbeatable(w.raw)) continue;
            std::int64_t req = certify_ymax(ctx, w, as.piece.vertices, *pool);
            if (req < 0) hopeless = true;
            need = std::max(need, req);
        }
        if (hopeless || need > ymax) {
            ymax = std::max(2 * ymax, need);
            continue;
        }

        WinnerPartition out;
        out.triangle = tri;
        out.candidate_ymax = ymax;
        std::vector<std::pair<std::size_t, ConvexPiece>> full;
        for (auto& as : assigned) {
            if (as.piece.vertices.size() >= 3 && area(as.piece.vertices) > 0) {
                full.emplace_back(as.candidate, std::move(as.piece));
            } else {
                out.boundary.emplace_back(cands[as.candidate].raw, std::move(as.piece));
            }
        }
        std::map<std::size_t, std::vector<WinnerRegion>> regions;
        for (auto& [ci, piece] : full) {
            WinnerRegion r;
            r.winner = cands[ci].raw;
            r.winner_vec = cands[ci].vec;
            r.vertices = piece.vertices;
            r.area = area(piece.vertices);
            r.pieces.push_back(std::move(piece));
            regions[ci].push_back(std::move(r));
        }
        for (auto& [ci, list] : regions) {
            bool merged = true;
            while (merged) {
                merged = false;
                for (std::size_t i = 0; i < list.size() && !merged; ++i) {
                    for (std::size_t j = i + 1; j < list.size() && !merged; ++j) {
                        std::vector<SectionPoint> pts = list[i].vertices;
                        pts.insert(pts.end(), list[j].vertices.begin(), list[j].vertices.end());
                        Polygon hull = convex_hull(pts);
                        Rational a = area(hull);
                        if (a != list[i].area + list[j].area) continue;
                        list[i].vertices = hull;
                        list[i].area = a;
                        for (auto& pc : list[j].pieces) list[i].pieces.push_back(std::move(pc));
                        list.erase(list.begin() + static_cast<long>(j));
                        merged = true;
                    }
                }
            }
            for (auto& r : list) out.regions.push_back(std::move(r));
        }
        std::sort(out.regions.begin(), out.regions.end(),
                  [](const WinnerRegion& u, const WinnerRegion& v) { return winner_order(u.winner, v.winner); });
        for (auto& r : out.regions) {
            r.vertices = simplify(r.vertices);
            const std::size_t n = r.vertices.size();
            for (std::size_t i = 0; i < n; ++i) {
                const auto& P = r.vertices[i];
                const auto& Q = r.vertices[(i + 1) % n];
                SectionPoint mid{(P.a + Q.a) / 2, (P.b + Q.b) / 2};
                r.constraints.push_back(edge_halfplane(P, Q, r.contains(mid)));
            }
        }
        if (out.total_area() != tri.area())
            throw InvariantError("winner regions do not sum to the triangle area");
        return out;
    }
}

}  // namespace slopegap
