#pragma once

#include "slopegap/section.hpp"

#include <functional>
#include <vector>

namespace slopegap {

struct EmpiricalGaps {
    Rational R;
    /// Primitive directions (p, q) of the window slopes q/p, increasing.
    std::vector<HolVec> slopes;
    /// R^2 times successive slope differences, in slope order.
    std::vector<long double> gaps;

    std::size_t N() const { return slopes.size(); }
    Rational exact_gap(std::size_t i) const;
};

/// Slopes of saddle connections (x, y) with 0 < x <= R and 0 <= y <= x.
EmpiricalGaps empirical_gaps(const OrbitGraph& graph, int node, const Rational& R);
EmpiricalGaps empirical_gaps(const Origami& o, const Rational& R);

/// One cusp triangle with its partition and Lebesgue weight.
struct CdfPiece {
    WinnerPartition partition;
    Rational weight;
};

/// Area of {p in region : return time of the winner at p > t}.
long double region_tail_area(const WinnerRegion& region, long double t);
/// Largest value of a(a x/y + b) over the closure of the region, i.e. 1 / (least return time).
Rational region_max_inverse_return(const WinnerRegion& region);

class AnalyticCDF {
public:
    explicit AnalyticCDF(std::vector<CdfPiece> pieces);

    long double G(long double t) const;
    long double survival(long double t) const;
    /// Infimum of the return time over all pieces.
    const Rational& min_return_time() const { return min_rt_; }
    const Rational& total_weight() const { return total_; }
    const std::vector<CdfPiece>& pieces() const { return pieces_; }
    /// Values of t where the level set meets a vertex or becomes tangent to an edge.
    std::vector<Rational> critical_values() const;

private:
    std::vector<CdfPiece> pieces_;
    Rational total_;
    Rational min_rt_;
    long double min_rt_ld_;
    struct Cache;
    std::shared_ptr<const Cache> cache_;
};

/// Least-squares slope of log S(t) against log t on a geometric grid.
long double fit_loglog_slope(const std::function<long double(long double)>& survival, long double t_lo, long double t_hi,
                             int points = 41);
long double tail_exponent(const AnalyticCDF& G, long double t_lo, long double t_hi, int points = 41);

/// sup |F_emp - F| over the sample values; `samples` must be sorted.
long double ks_distance(const std::vector<long double>& samples, const std::function<long double(long double)>& cdf);
long double ks_distance(const EmpiricalGaps& gaps, const AnalyticCDF& G);

/// Pieces for every cusp of the origami; half-turn partners share one triangle of doubled weight.
struct SurfacePipeline {
    std::shared_ptr<const OrbitGraph> graph;
    std::vector<CuspData> cusps;
    std::vector<std::shared_ptr<CuspContext>> contexts;  ///< one per cusp that carries a triangle
};

SurfacePipeline build_pipeline(const Origami& o);
/// Partitions run on up to `threads` workers; the result does not depend on it.
AnalyticCDF analytic_cdf(const SurfacePipeline& pipeline, unsigned threads = 1);

}  // namespace slopegap
