#include "slopegap/distribution.hpp"

#include "slopegap/error.hpp"
#include "slopegap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace slopegap {

Rational EmpiricalGaps::exact_gap(std::size_t i) const {
    const HolVec& u = slopes.at(i);
    const HolVec& v = slopes.at(i + 1);
    Rational det(static_cast<long>(v.y * u.x - u.y * v.x));
    return R * R * det / Rational(static_cast<long>(u.x * v.x));
}

EmpiricalGaps empirical_gaps(const OrbitGraph& graph, int node, const Rational& R) {
    if (R < 1) throw InputError("empirical gaps need R >= 1");
    EmpiricalGaps out;
    out.R = R;
    for_each_saddle_direction(
        graph, node, floor_int(R), [&](HolVec d, const std::vector<std::int64_t>&) { out.slopes.push_back(d); }, true);
    if (out.slopes.size() < 2) throw InputError("fewer than two slopes in the window");
    const long double R2 = to_long_double(R) * to_long_double(R);
    out.gaps.reserve(out.slopes.size() - 1);
    for (std::size_t i = 0; i + 1 < out.slopes.size(); ++i) {
        const HolVec& u = out.slopes[i];
        const HolVec& v = out.slopes[i + 1];
        long double det = static_cast<long double>(v.y * u.x - u.y * v.x);
        out.gaps.push_back(R2 * det / (static_cast<long double>(u.x) * static_cast<long double>(v.x)));
    }
    return out;
}

EmpiricalGaps empirical_gaps(const Origami& o, const Rational& R) {
    OrbitGraph graph = sl2z_orbit(o);
    return empirical_gaps(graph, 0, R);
}

namespace {

/// Lower and upper boundary lines b = s a + c of a region over one a-interval.
struct Slab {
    long double a1, a2;
    long double s_lo, c_lo, s_hi, c_hi;
};

struct RegionSlabs {
    long double m;
    std::vector<Slab> slabs;
};

RegionSlabs make_slabs(const WinnerRegion& r) {
    RegionSlabs out;
    out.m = to_long_double(r.winner_vec.x / r.winner_vec.y);
    const Polygon& P = r.vertices;
    std::vector<Rational> xs;
    for (const auto& v : P) xs.push_back(v.a);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational mid = (xs[i] + xs[i + 1]) / 2;
        bool have = false;
        Rational lo_s, lo_c, hi_s, hi_c, lo_at, hi_at;
        for (std::size_t e = 0; e < P.size(); ++e) {
            const auto& p = P[e];
            const auto& q = P[(e + 1) % P.size()];
            if (p.a == q.a) continue;
            if (std::min(p.a, q.a) > xs[i] || std::max(p.a, q.a) < xs[i + 1]) continue;
            Rational s = (q.b - p.b) / (q.a - p.a);
            Rational c = p.b - s * p.a;
            Rational at = s * mid + c;
            if (!have) {
                lo_s = hi_s = s;
                lo_c = hi_c = c;
                lo_at = hi_at = at;
                have = true;
            } else if (at < lo_at) {
                lo_s = s, lo_c = c, lo_at = at;
            } else if (at > hi_at) {
                hi_s = s, hi_c = c, hi_at = at;
            }
        }
        if (!have) throw InvariantError("region slab without boundary edges");
        out.slabs.push_back({to_long_double(xs[i]), to_long_double(xs[i + 1]), to_long_double(lo_s), to_long_double(lo_c),
                             to_long_double(hi_s), to_long_double(hi_c)});
    }
    return out;
}

/// Positive roots of k a^2 + c a - 1/t = 0, i.e. zeros of 1/(a t) - k a - c.
void hyperbola_roots(long double k, long double c, long double t, std::vector<long double>& out) {
    const long double inv_t = 1.0L / t;
    if (k == 0) {
        if (c != 0) out.push_back(inv_t / c);
        return;
    }
    long double disc = c * c + 4 * k * inv_t;
    if (disc < 0) return;
    long double sq = std::sqrt(disc);
    // Stable pair of roots.
    long double qv = -0.5L * (c + (c >= 0 ? sq : -sq));
    if (qv != 0) {
        out.push_back(qv / k);
        out.push_back(-inv_t / qv);
    } else {
        out.push_back(0);
    }
}

/// Integral over [x, y] of 1/(a t) - k a - c.
long double hyperbola_integral(long double k, long double c, long double t, long double x, long double y) {
    long double d = y - x;
    return std::log1p(d / x) / t - k * d * (x + y) / 2 - c * d;
}

long double slab_tail(const Slab& s, long double m, long double t) {
    const long double k_lo = m + s.s_lo, k_hi = m + s.s_hi;
    std::vector<long double> cuts{s.a1, s.a2};
    std::vector<long double> roots;
    hyperbola_roots(k_lo, s.c_lo, t, roots);
    hyperbola_roots(k_hi, s.c_hi, t, roots);
    for (long double r : roots)
        if (r > s.a1 && r < s.a2) cuts.push_back(r);
    std::sort(cuts.begin(), cuts.end());
    long double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const long double x = cuts[i], y = cuts[i + 1];
        if (y <= x) continue;
        const long double mid = (x + y) / 2;
        const long double h = 1.0L / (mid * t) - m * mid;
        const long double lo = s.s_lo * mid + s.c_lo, hi = s.s_hi * mid + s.c_hi;
        if (h <= lo) continue;
        if (h >= hi) {
            total += (s.s_hi - s.s_lo) * (y - x) * (x + y) / 2 + (s.c_hi - s.c_lo) * (y - x);
        } else {
            total += hyperbola_integral(k_lo, s.c_lo, t, x, y);
        }
    }
    return total;
}

long double tail_of(const RegionSlabs& rs, long double t) {
    long double total = 0;
    for (const auto& s : rs.slabs) total += slab_tail(s, rs.m, t);
    return total;
}

/// Points of the closure where a(a m + b) has a critical value: vertices and edge critical points.
std::vector<Rational> inverse_return_candidates(const WinnerRegion& r) {
    const Rational m = r.winner_vec.x / r.winner_vec.y;
    std::vector<Rational> out;
    const Polygon& P = r.vertices;
    for (std::size_t e = 0; e < P.size(); ++e) {
        const auto& p = P[e];
        const auto& q = P[(e + 1) % P.size()];
        out.push_back(p.a * (p.a * m + p.b));
        if (p.a == q.a) continue;
        Rational s = (q.b - p.b) / (q.a - p.a);
        Rational c = p.b - s * p.a;
        Rational k = m + s;
        if (k == 0) continue;
        Rational a = -c / (2 * k);
        if (a > std::min(p.a, q.a) && a < std::max(p.a, q.a)) out.push_back(k * a * a + c * a);
    }
    return out;
}

}  // namespace

long double region_tail_area(const WinnerRegion& region, long double t) {
    if (!(t > 0)) throw InputError("tail area needs t > 0");
    return tail_of(make_slabs(region), t);
}

Rational region_max_inverse_return(const WinnerRegion& region) {
    auto c = inverse_return_candidates(region);
    return *std::max_element(c.begin(), c.end());
}

struct AnalyticCDF::Cache {
    std::vector<RegionSlabs> regions;
    std::vector<long double> factor;  // piece weight / (piece area * total weight)
};

AnalyticCDF::AnalyticCDF(std::vector<CdfPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InputError("analytic CDF needs at least one partition");
    total_ = 0;
    Rational best = 0;
    for (const auto& p : pieces_) {
        if (p.partition.regions.empty()) throw InputError("empty partition");
        total_ += p.weight;
        for (const auto& r : p.partition.regions) best = std::max(best, region_max_inverse_return(r));
    }
    if (best <= 0) throw InvariantError("return time is unbounded on every region");
    min_rt_ = 1 / best;
    min_rt_ld_ = to_long_double(min_rt_);
    auto cache = std::make_shared<Cache>();
    const long double total = to_long_double(total_);
    for (const auto& p : pieces_) {
        const long double f = to_long_double(p.weight / p.partition.triangle.area()) / total;
        for (const auto& r : p.partition.regions) {
            cache->regions.push_back(make_slabs(r));
            cache->factor.push_back(f);
        }
    }
    cache_ = std::move(cache);
}

long double AnalyticCDF::survival(long double t) const {
    if (t < min_rt_ld_) return 1.0L;
    long double s = 0;
    for (std::size_t i = 0; i < cache_->regions.size(); ++i) s += cache_->factor[i] * tail_of(cache_->regions[i], t);
    return std::clamp(s, 0.0L, 1.0L);
}

long double AnalyticCDF::G(long double t) const {
    if (t < min_rt_ld_) return 0.0L;
    return 1.0L - survival(t);
}

std::vector<Rational> AnalyticCDF::critical_values() const {
    std::vector<Rational> out;
    for (const auto& p : pieces_)
        for (const auto& r : p.partition.regions)
            for (const auto& f : inverse_return_candidates(r))
                if (f > 0) out.push_back(1 / f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

long double fit_loglog_slope(const std::function<long double(long double)>& survival, long double t_lo, long double t_hi,
                             int points) {
    if (!(t_lo > 0) || !(t_lo < t_hi) || points < 2) throw InputError("bad tail grid");
    std::vector<long double> xs, ys;
    for (int i = 0; i < points; ++i) {
        long double t = t_lo * std::pow(t_hi / t_lo, static_cast<long double>(i) / (points - 1));
        long double s = survival(t);
        if (s > 0) {
            xs.push_back(std::log(t));
            ys.push_back(std::log(s));
        }
    }
    if (xs.size() < 2) throw InvariantError("survival underflows across the grid");
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    long double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

long double tail_exponent(const AnalyticCDF& G, long double t_lo, long double t_hi, int points) {
    return fit_loglog_slope([&](long double t) { return G.survival(t); }, t_lo, t_hi, points);
}

long double ks_distance(const std::vector<long double>& samples, const std::function<long double(long double)>& cdf) {
    const std::size_t M = samples.size();
    if (M == 0) throw InputError("no samples");
    long double d = 0;
    for (std::size_t i = 0; i < M;) {
        std::size_t j = i;
        while (j + 1 < M && samples[j + 1] == samples[i]) ++j;
        long double c = cdf(samples[i]);
        long double before = static_cast<long double>(i) / M;
        long double at = static_cast<long double>(j + 1) / M;
        d = std::max({d, std::fabs(c - before), std::fabs(c - at)});
        i = j + 1;
    }
    return d;
}

long double ks_distance(const EmpiricalGaps& gaps, const AnalyticCDF& G) {
    if (gaps.N() < 2) throw InputError("need at least two slopes");
    std::vector<long double> s = gaps.gaps;
    std::sort(s.begin(), s.end());
    return ks_distance(s, [&](long double t) { return G.G(t); });
}

SurfacePipeline build_pipeline(const Origami& o) {
    SurfacePipeline out;
    out.graph = std::make_shared<const OrbitGraph>(sl2z_orbit(o));
    out.cusps = compute_cusps(*out.graph, o);
    for (const auto& c : out.cusps) {
        if (c.mirror_of >= 0) continue;
        bool mirrored = std::any_of(out.cusps.begin(), out.cusps.end(), [&](const CuspData& d) { return d.mirror_of == c.index; });
        Rational weight = c.n / 2;
        if (mirrored) weight *= 2;
        out.contexts.push_back(std::make_shared<CuspContext>(out.graph, c, weight));
    }
    return out;
}

AnalyticCDF analytic_cdf(const SurfacePipeline& pipeline, unsigned threads) {
    std::vector<std::optional<CdfPiece>> slots(pipeline.contexts.size());
    parallel_for(slots.size(), threads, [&](std::size_t i) {
        const auto& ctx = *pipeline.contexts[i];
        slots[i] = CdfPiece{compute_partition(ctx), ctx.triangle().area_weight};
    });
    std::vector<CdfPiece> pieces;
    for (auto& s : slots) pieces.push_back(std::move(*s));
    return AnalyticCDF(std::move(pieces));
}

}  // namespace slopegap
