#pragma once

#include "slopegap/distribution.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace slopegap {

/// Straight-line tracing through the square grid from every marked corner.
SaddleConnectionSet trace_enumerate(const Origami& o, const Rational& R);

/// Exhaustive winner search over a traced window that grows until it provably holds every competitor.
class BruteForceWinner {
public:
    BruteForceWinner(Origami rep, std::int64_t L, SectionTriangle triangle);
    HolVec operator()(const SectionPoint& p) const;
    std::int64_t window() const;

private:
    struct Window {
        std::int64_t R = 0;
        std::vector<std::vector<std::int64_t>> xs_by_y;  ///< index y, unsorted
    };
    std::shared_ptr<const Window> window(std::int64_t R) const;

    Origami rep_;
    std::int64_t L_;
    SectionTriangle tri_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const Window> win_;
};

HolVec brute_force_winner(const CuspContext& ctx, const SectionPoint& p);

struct MonteCarloCdf {
    std::vector<long double> t;
    std::vector<long double> estimate;
    std::vector<long double> std_error;  ///< from the estimate itself
    std::size_t samples = 0;
};

/// Area-weighted uniform samples over the triangles, return time by winner_at.
MonteCarloCdf monte_carlo_cdf(const std::vector<std::shared_ptr<CuspContext>>& pieces, const std::vector<long double>& grid,
                              std::size_t samples, std::uint64_t seed);

/// Uniform rational point of the triangle (denominators up to 2^20 on the sampling grid).
template <class Rng>
SectionPoint sample_triangle(const SectionTriangle& tri, Rng& rng);

/// Tail area by adaptive Gauss-Kronrod quadrature of the clipped vertical sections.
long double quadrature_tail_area(const WinnerRegion& region, long double t);

}  // namespace slopegap

#include <random>

namespace slopegap {

template <class Rng>
SectionPoint sample_triangle(const SectionTriangle& tri, Rng& rng) {
    constexpr long grid = 1L << 20;
    std::uniform_int_distribution<long> pick(0, grid - 1);
    const Rational upper = 1 / tri.y0;
    const Rational bottom = (1 - tri.x0) / tri.y0 - tri.n;
    while (true) {
        Rational a(mpz_class(pick(rng) + 1), mpz_class(grid));
        Rational u(mpz_class(2 * pick(rng) + 1), mpz_class(2 * grid));
        a.canonicalize();
        u.canonicalize();
        SectionPoint p{a, bottom + (upper - bottom) * u};
        if (tri.contains(p)) return p;
    }
}

}  // namespace slopegap
