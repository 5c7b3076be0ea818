#include "slopegap/cli.hpp"
#include "slopegap/distribution.hpp"
#include "slopegap/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace slopegap;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, double secs, double limit, const std::string& detail) {
    bool in_time = limit <= 0 || secs < limit;
    bool ok = pass && in_time;
    if (!ok) ++failures;
    std::ostringstream line;
    line << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << "  [" << format_real(secs).substr(0, 6) << " s";
    if (limit > 0) line << " / " << limit << " s";
    line << "]";
    if (!in_time) line << " too slow";
    std::cout << line.str() << std::endl;
}

Origami load(const char* name) { return load_origami(std::string(SLOPEGAP_DATA_DIR "/") + name); }

struct Surface {
    Origami origami;
    SurfacePipeline pipeline;
    std::vector<WinnerPartition> partitions;
};

}  // namespace

int main() {
    const Origami torus = Origami::torus();
    const Origami L = load("L.origami");

    // 1
    {
        auto t0 = Clock::now();
        auto pl = build_pipeline(L);
        WinnerPartition p = compute_partition(*pl.contexts.front());
        const auto& tri = p.triangle;
        std::set<HolVec> winners;
        for (const auto& r : p.regions) winners.insert(r.winner);
        bool pass = tri.x0 == 1 && tri.y0 == 2 && tri.n == 1 && p.regions.size() == 3 &&
                    winners == std::set<HolVec>{{1, 2}, {2, 3}, {2, 2}};
        std::ostringstream d;
        d << "regions=" << p.regions.size() << " winners=";
        for (const auto& w : winners) d << "(" << w.x << "," << w.y << ")";
        report(1, pass, since(t0), 5, d.str());
    }

    std::vector<Origami> corpus;
    for (int n = 1; n <= 4; ++n)
        for (const auto& o : all_origamis(n)) corpus.push_back(o);
    corpus.push_back(L);

    // 2
    std::vector<Surface> surfaces;
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t triangles = 0;
        std::string detail;
        for (const auto& o : corpus) {
            Surface s{o, build_pipeline(o), {}};
            for (const auto& ctx : s.pipeline.contexts) {
                try {
                    s.partitions.push_back(compute_partition(*ctx));
                } catch (const std::exception& e) {
                    pass = false;
                    detail = std::string(" error: ") + e.what();
                    s.partitions.emplace_back();
                    continue;
                }
                if (s.partitions.back().total_area() != ctx->triangle().area()) pass = false;
                ++triangles;
            }
            surfaces.push_back(std::move(s));
        }
        report(2, pass, since(t0), 300,
               "origamis=" + std::to_string(corpus.size()) + " triangles=" + std::to_string(triangles) + detail);
    }

    // 3
    {
        auto t0 = Clock::now();
        const std::size_t per = 10000;
        std::size_t points = 0, bad = 0;
        std::uint64_t seed = 20240601;
        for (const auto& s : surfaces)
            for (std::size_t i = 0; i < s.pipeline.contexts.size(); ++i) {
                const CuspContext& ctx = *s.pipeline.contexts[i];
                const WinnerPartition& part = s.partitions[i];
                BruteForceWinner brute(ctx.representative(), ctx.L(), ctx.triangle());
                std::mt19937_64 rng(seed++);
                for (std::size_t k = 0; k < per; ++k) {
                    SectionPoint p = sample_triangle(ctx.triangle(), rng);
                    HolVec w = winner_at(ctx, p).raw;
                    if (!(w == brute(p) && w == part.lookup(p))) ++bad;
                    ++points;
                }
            }
        report(3, bad == 0, since(t0), 600, "points=" + std::to_string(points) + " mismatches=" + std::to_string(bad));
    }

    // 4
    {
        auto t0 = Clock::now();
        std::size_t compared = 0, bad = 0;
        for (const auto& o : corpus)
            for (int R : {1, 2, 7, 20, 50}) {
                ++compared;
                if (enumerate_saddle_connections(o, Rational(R)).vectors != trace_enumerate(o, Rational(R)).vectors) ++bad;
            }
        std::set<std::pair<std::int64_t, std::int64_t>> farey;
        for (std::int64_t q = 1; q <= 5; ++q)
            for (std::int64_t p = 0; p <= q; ++p)
                if (std::gcd(p, q) == 1) farey.insert({q, p});
        EmpiricalGaps g = empirical_gaps(torus, Rational(5));
        std::set<std::pair<std::int64_t, std::int64_t>> slopes;
        for (const auto& d : g.slopes) slopes.insert({d.x, d.y});
        bool pass = bad == 0 && slopes == farey && g.N() == 11;
        report(4, pass, since(t0), 300,
               "windows=" + std::to_string(compared) + " mismatches=" + std::to_string(bad) + " F5_slopes=" + std::to_string(g.N()));
    }

    auto torus_pl = build_pipeline(torus);
    auto L_pl = build_pipeline(L);

    // 5
    {
        auto t0 = Clock::now();
        AnalyticCDF G = analytic_cdf(torus_pl);
        EmpiricalGaps g = empirical_gaps(*torus_pl.graph, 0, Rational(3000));
        long double ks = ks_distance(g, G);
        report(5, ks <= 0.01L, since(t0), 60, "N=" + std::to_string(g.N()) + " ks=" + format_real(ks));
    }

    // 6
    {
        auto t0 = Clock::now();
        AnalyticCDF G = analytic_cdf(L_pl);
        EmpiricalGaps g = empirical_gaps(*L_pl.graph, 0, Rational(2000));
        long double ks = ks_distance(g, G);
        report(6, ks <= 0.02L, since(t0), 300,
               "cusps=" + std::to_string(L_pl.cusps.size()) + " N=" + std::to_string(g.N()) + " ks=" + format_real(ks));
    }

    // 7
    {
        auto t0 = Clock::now();
        long double et = tail_exponent(analytic_cdf(torus_pl), 10, 1000);
        long double el = tail_exponent(analytic_cdf(L_pl), 10, 1000);
        bool pass = et >= -2.1L && et <= -1.9L && el >= -2.1L && el <= -1.9L;
        report(7, pass, since(t0), 60, "torus=" + format_real(et) + " L=" + format_real(el));
    }

    // 8
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::string detail;
        for (const auto* pl : {&torus_pl, &L_pl}) {
            AnalyticCDF G = analytic_cdf(*pl);
            const long double m = to_long_double(G.min_return_time());
            for (long double f : {0.0L, 0.5L, 0.9L, 0.999L, 1 - 1e-12L})
                if (G.G(m * f) != 0) pass = false;
            detail += (pl == &torus_pl ? "torus" : " L");
            detail += " min_rt=" + to_string(G.min_return_time());
            for (int R : {500, 1000, 2000}) {
                EmpiricalGaps g = empirical_gaps(*pl->graph, 0, Rational(R));
                long double mn = *std::min_element(g.gaps.begin(), g.gaps.end());
                if (!(mn > 0.9L * m)) pass = false;
                detail += " R" + std::to_string(R) + "=" + format_real(mn).substr(0, 8);
            }
        }
        report(8, pass, since(t0), 0, detail);
    }

    // 9
    {
        auto t0 = Clock::now();
        bool pass = true;
        long double worst_rel = 0, worst_z = 0;
        std::size_t regions = 0;
        TGrid tails{0.5L, 1000, 20, true};
        TGrid cdf{0.5L, 20, 20, false};
        std::uint64_t seed = 977;
        for (const auto* pl : {&torus_pl, &L_pl}) {
            AnalyticCDF G = analytic_cdf(*pl);
            for (const auto& pc : G.pieces())
                for (const auto& r : pc.partition.regions) {
                    ++regions;
                    for (long double t : tails.values()) {
                        long double a = region_tail_area(r, t), q = quadrature_tail_area(r, t);
                        long double scale = std::max(std::fabs(a), std::fabs(q));
                        if (scale > 0) worst_rel = std::max(worst_rel, std::fabs(a - q) / scale);
                    }
                }
            const std::size_t N = 1000000;
            auto grid = cdf.values();
            MonteCarloCdf mc = monte_carlo_cdf(pl->contexts, grid, N, seed++);
            for (std::size_t k = 0; k < grid.size(); ++k) {
                long double g = G.G(grid[k]);
                long double se = std::sqrt(g * (1 - g) / N);
                long double diff = std::fabs(mc.estimate[k] - g);
                if (se == 0) {
                    if (diff != 0) pass = false;
                } else {
                    worst_z = std::max(worst_z, diff / se);
                }
            }
        }
        pass = pass && worst_rel <= 1e-10L && worst_z <= 3;
        report(9, pass, since(t0), 0,
               "regions=" + std::to_string(regions) + " worst_rel=" + format_real(worst_rel) + " worst_z=" + format_real(worst_z));
    }

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
