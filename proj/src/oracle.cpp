#include "slopegap/oracle.hpp"

#include "slopegap/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slopegap {

SaddleConnectionSet trace_enumerate(const Origami& o, const Rational& R) {
    if (R <= 0) throw InputError("trace bound must be positive");
    const std::int64_t Rint = floor_int(R);
    const CornerData corners = singular_corners(o);
    const Permutation& h = o.h();
    const Permutation& v = o.v();
    auto marked = [&](int sq) { return corners.marked_square[static_cast<std::size_t>(sq)] != 0; };
    std::vector<int> starts;
    for (int i = 0; i < o.size(); ++i)
        if (marked(i)) starts.push_back(i);

    SaddleConnectionSet out;
    out.bound_R = R;
    std::vector<char> moves;
    for (std::int64_t p = 0; p <= Rint; ++p) {
        for (std::int64_t q = 0; q <= Rint; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const std::int64_t len = std::max(p, q);
            if (q == 0 || p == 0) {
                // Along the bottom edge (h) or the left edge (v) of the squares.
                const Permutation& step = q == 0 ? h : v;
                for (int s : starts) {
                    int sq = step(s);
                    std::int64_t k = 1;
                    while (!marked(sq) && k < Rint) {
                        sq = step(sq);
                        ++k;
                    }
                    if (marked(sq)) out.vectors.push_back({k * p, k * q});
                }
                continue;
            }
            // Order of grid-line crossings within one period: vertical lines at i/p, horizontal at j/q.
            moves.clear();
            for (std::int64_t i = 1, j = 1; i < p || j < q;) {
                if (j >= q || (i < p && i * q < j * p)) {
                    moves.push_back('h');
                    ++i;
                } else {
                    moves.push_back('v');
                    ++j;
                }
            }
            for (int s : starts) {
                int sq = s;
                for (std::int64_t k = 1; k * len <= Rint; ++k) {
                    for (char m : moves) sq = m == 'h' ? h(sq) : v(sq);
                    // Top right corner of sq is the lower left corner of h(v(sq)).
                    int corner = h(v(sq));
                    if (marked(corner)) {
                        out.vectors.push_back({k * p, k * q});
                        break;
                    }
                    sq = corner;
                }
            }
        }
    }
    std::sort(out.vectors.begin(), out.vectors.end());
    out.vectors.erase(std::unique(out.vectors.begin(), out.vectors.end()), out.vectors.end());
    return out;
}

BruteForceWinner::BruteForceWinner(Origami rep, std::int64_t L, SectionTriangle triangle)
    : rep_(std::move(rep)), L_(L), tri_(std::move(triangle)) {}

std::int64_t BruteForceWinner::window() const {
    std::lock_guard<std::mutex> lock(mu_);
    return win_ ? win_->R : 0;
}

std::shared_ptr<const BruteForceWinner::Window> BruteForceWinner::window(std::int64_t R) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (win_ && win_->R >= R) return win_;
    auto w = std::make_shared<Window>();
    w->R = R;
    w->xs_by_y.resize(static_cast<std::size_t>(R + 1));
    for (const auto& v : trace_enumerate(rep_, Rational(static_cast<long>(R))).vectors)
        w->xs_by_y[static_cast<std::size_t>(v.y)].push_back(v.x);
    win_ = w;
    return win_;
}

namespace {

__int128 to_i128(const mpz_class& z) {
    if (!z.fits_slong_p()) throw InputError("point too fine for the brute force oracle");
    return z.get_si();
}

}  // namespace

HolVec BruteForceWinner::operator()(const SectionPoint& p) const {
    if (!tri_.contains(p)) throw InputError("point outside the section triangle");
    mpz_class Dz;
    mpz_lcm(Dz.get_mpz_t(), p.a.get_den_mpz_t(), p.b.get_den_mpz_t());
    const __int128 A = to_i128(p.a.get_num() * (Dz / p.a.get_den()));
    const __int128 B = to_i128(p.b.get_num() * (Dz / p.b.get_den()));
    const __int128 D = to_i128(Dz);
    const __int128 L2 = static_cast<__int128>(L_) * L_;
    const __int128 DL = D * L_;

    std::int64_t R = std::max<std::int64_t>(16, window());
    while (true) {
        auto w = window(R);
        bool found = false;
        std::int64_t bx = 0, by = 0;
        __int128 bnum = 0;
        for (std::int64_t y = 1; y <= w->R; ++y) {
            if (found && y * bnum >= by * DL) break;
            for (std::int64_t x : w->xs_by_y[static_cast<std::size_t>(y)]) {
                __int128 num = A * x + B * y * L2;
                if (num <= 0 || num > DL) continue;
                bool better = !found;
                if (found) {
                    __int128 lhs = static_cast<__int128>(x) * by, rhs = static_cast<__int128>(bx) * y;
                    better = lhs > rhs || (lhs == rhs && (y < by || (y == by && x < bx)));
                }
                if (better) {
                    found = true;
                    bx = x;
                    by = y;
                    bnum = num;
                }
            }
        }
        std::int64_t needed;
        if (found) {
            // Competitors: y < by D L / bnum and x <= (D L - B y L^2) / A.
            __int128 ylim = (by * DL + bnum - 1) / bnum - 1;
            __int128 x0lim = DL / A;
            __int128 xylim = (DL - B * ylim * L2) / A;
            __int128 need = std::max({ylim, x0lim, xylim});
            if (need <= w->R) return {bx, by};
            needed = need > (1 << 13) ? (1 << 14) : static_cast<std::int64_t>(need);
        } else {
            needed = 2 * w->R;
        }
        if (needed > (1 << 13)) throw InvariantError("brute force window exceeded its cap");
        R = std::max(needed, 2 * w->R);
    }
}

HolVec brute_force_winner(const CuspContext& ctx, const SectionPoint& p) {
    BruteForceWinner oracle(ctx.representative(), ctx.L(), ctx.triangle());
    return oracle(p);
}

MonteCarloCdf monte_carlo_cdf(const std::vector<std::shared_ptr<CuspContext>>& pieces, const std::vector<long double>& grid,
                              std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("need at least one sample");
    if (pieces.empty()) throw InputError("no pieces to sample");
    std::vector<double> weights;
    for (const auto& p : pieces) weights.push_back(p->triangle().area_weight.get_d());
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> choose(weights.begin(), weights.end());
    std::vector<long double> times;
    times.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const CuspContext& ctx = *pieces[choose(rng)];
        SectionPoint p = sample_triangle(ctx.triangle(), rng);
        times.push_back(to_long_double(winner_at(ctx, p).return_time));
    }
    std::sort(times.begin(), times.end());
    MonteCarloCdf out;
    out.samples = samples;
    out.t = grid;
    for (long double t : grid) {
        auto count = static_cast<long double>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
        long double est = count / samples;
        out.estimate.push_back(est);
        out.std_error.push_back(std::sqrt(est * (1 - est) / samples));
    }
    return out;
}

long double quadrature_tail_area(const WinnerRegion& region, long double t) {
    if (!(t > 0)) throw InputError("tail area needs t > 0");
    const long double m = to_long_double(region.winner_vec.x / region.winner_vec.y);
    struct Edge {
        long double pa, pb, qa, qb;
    };
    std::vector<Edge> edges;
    std::vector<long double> xs;
    const Polygon& P = region.vertices;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto& p = P[i];
        const auto& q = P[(i + 1) % P.size()];
        xs.push_back(to_long_double(p.a));
        if (p.a != q.a) edges.push_back({to_long_double(p.a), to_long_double(p.b), to_long_double(q.a), to_long_double(q.b)});
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto height = [&](long double a) {
        long double lo = INFINITY, hi = -INFINITY;
        for (const auto& e : edges) {
            if (a < std::min(e.pa, e.qa) || a > std::max(e.pa, e.qa)) continue;
            long double b = e.pb + (a - e.pa) * (e.qb - e.pb) / (e.qa - e.pa);
            lo = std::min(lo, b);
            hi = std::max(hi, b);
        }
        if (!(hi > lo)) return 0.0L;
        long double h = 1.0L / (a * t) - m * a;
        return std::clamp(h, lo, hi) - lo;
    };
    // Kinks where the hyperbola crosses an edge line, located by sampling and bracketing.
    // Samples are uniform in the middle and geometric towards both ends of each slab.
    std::vector<long double> fractions;
    for (int k = 1; k < 512; ++k) fractions.push_back(k / 512.0L);
    for (long double e = 1.0L / 1024; e > 1e-18L; e /= 2) {
        fractions.push_back(e);
        fractions.push_back(1 - e);
    }
    fractions.push_back(1);
    std::sort(fractions.begin(), fractions.end());
    std::vector<long double> cuts = xs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const long double lo = xs[i], hi = xs[i + 1];
        for (const auto& e : edges) {
            if (std::max(e.pa, e.qa) < hi || std::min(e.pa, e.qa) > lo) continue;
            auto gap = [&](long double a) { return 1.0L / (a * t) - m * a - (e.pb + (a - e.pa) * (e.qb - e.pb) / (e.qa - e.pa)); };
            long double prev_a = lo, prev = gap(lo);
            for (long double u : fractions) {
                long double a = lo + (hi - lo) * u;
                long double cur = gap(a);
                if (cur == 0) {
                    cuts.push_back(a);
                } else if (std::isfinite(prev) && ((prev < 0 && cur > 0) || (prev > 0 && cur < 0))) {
                    std::uintmax_t iters = 200;
                    auto [r0, r1] = boost::math::tools::toms748_solve(gap, prev_a, a, prev, cur,
                                                                      boost::math::tools::eps_tolerance<long double>(), iters);
                    cuts.push_back((r0 + r1) / 2);
                }
                prev_a = a;
                prev = cur;
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    long double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        // Between kinks the clamp is on one branch throughout; the lower branch contributes nothing.
        if (height((cuts[i] + cuts[i + 1]) / 2) == 0) continue;
        total += boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(height, cuts[i], cuts[i + 1], 15, 1e-13L);
    }
    return total;
}

}  // namespace slopegap
