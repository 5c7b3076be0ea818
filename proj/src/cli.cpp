#include "slopegap/cli.hpp"

#include "slopegap/distribution.hpp"
#include "slopegap/error.hpp"
#include "slopegap/oracle.hpp"
#include "slopegap/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace slopegap {

namespace {

/// Invalid flag values; exit status 2.
class FlagError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

long double parse_real(const std::string& s) {
    try {
        std::size_t used = 0;
        long double v = std::stold(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw FlagError("not a number: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw FlagError("not a number: " + s);
    }
}

}  // namespace

std::vector<long double> TGrid::values() const {
    std::vector<long double> out;
    for (int i = 0; i < points; ++i) {
        long double f = static_cast<long double>(i) / (points - 1);
        out.push_back(log ? min * std::pow(max / min, f) : min + (max - min) * f);
    }
    return out;
}

TGrid parse_grid(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() != 3 && parts.size() != 4) throw FlagError("grid must be min:max:points[:log|linear]");
    TGrid g;
    g.min = parse_real(parts[0]);
    g.max = parse_real(parts[1]);
    try {
        std::size_t used = 0;
        g.points = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw FlagError("bad grid point count");
    } catch (const std::logic_error&) {
        throw FlagError("bad grid point count");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") g.log = true;
        else if (parts[3] != "linear") throw FlagError("grid scale must be log or linear");
    }
    if (!(g.min < g.max)) throw FlagError("grid needs min < max");
    if (g.points < 2) throw FlagError("grid needs at least 2 points");
    if (g.log && !(g.min > 0)) throw FlagError("log grid needs min > 0");
    return g;
}

std::string format_real(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17Lg", x);
    return buf;
}

namespace {

std::string format_vertices(const Polygon& poly) {
    std::string s;
    for (const auto& p : poly) {
        if (!s.empty()) s += ';';
        s += to_string(p.a) + ' ' + to_string(p.b);
    }
    return s;
}

/// The context carrying the triangle of cusp `id` (its own, or its half-turn partner's).
const CuspContext& context_for(const SurfacePipeline& pl, int id) {
    if (id < 0 || id >= static_cast<int>(pl.cusps.size()))
        throw FlagError("cusp index out of range (0.." + std::to_string(pl.cusps.size() - 1) + ")");
    int target = pl.cusps[static_cast<std::size_t>(id)].mirror_of >= 0 ? pl.cusps[static_cast<std::size_t>(id)].mirror_of : id;
    for (const auto& ctx : pl.contexts)
        if (ctx->cusp().index == target) return *ctx;
    throw InvariantError("no triangle for cusp " + std::to_string(id));
}

std::vector<const CuspContext*> selected(const SurfacePipeline& pl, const std::optional<int>& cusp) {
    std::vector<const CuspContext*> out;
    if (cusp) out.push_back(&context_for(pl, *cusp));
    else
        for (const auto& ctx : pl.contexts) out.push_back(ctx.get());
    return out;
}

void write_svg(const std::string& path, const std::vector<std::pair<int, WinnerPartition>>& parts) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    const double size = 400, pad = 40;
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\""
      << (size + pad) * static_cast<double>(parts.size()) + pad << "\">\n";
    static const char* palette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
    double top = pad;
    for (const auto& [id, part] : parts) {
        double bmin = 0, bmax = 0;
        bool first = true;
        for (const auto& v : part.triangle.vertices()) {
            double b = v.b.get_d();
            if (first || b < bmin) bmin = b;
            if (first || b > bmax) bmax = b;
            first = false;
        }
        auto X = [&](const Rational& a) { return pad + a.get_d() * size; };
        auto Y = [&](const Rational& b) { return top + (bmax - b.get_d()) / (bmax - bmin) * size; };
        f << "<text x=\"" << pad << "\" y=\"" << top - 8 << "\" font-size=\"14\">cusp " << id << "</text>\n";
        for (std::size_t k = 0; k < part.regions.size(); ++k) {
            const auto& r = part.regions[k];
            f << "<polygon fill=\"" << palette[k % 12] << "\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
            double cx = 0, cy = 0;
            for (const auto& v : r.vertices) {
                f << X(v.a) << ',' << Y(v.b) << ' ';
                cx += X(v.a);
                cy += Y(v.b);
            }
            cx /= static_cast<double>(r.vertices.size());
            cy /= static_cast<double>(r.vertices.size());
            f << "\"/>\n<text x=\"" << cx << "\" y=\"" << cy << "\" font-size=\"10\" text-anchor=\"middle\">(" << r.winner.x
              << ',' << r.winner.y << ")</text>\n";
        }
        top += size + pad;
    }
    f << "</svg>\n";
}

int cmd_cusps(const Origami& o, std::ostream& out, std::ostream& log) {
    OrbitGraph graph = sl2z_orbit(o);
    auto cusps = compute_cusps(graph, o);
    out << "cusp_id,width,orbit_repr_hash,L,alpha,n,has_minus_I,eigenvalue_sign\n";
    for (const auto& c : cusps)
        out << c.index << ',' << c.width_w << ',' << c.repr_hash << ',' << to_string(c.L) << ',' << to_string(c.alpha) << ','
            << to_string(c.n) << ',' << (c.has_minus_I ? 1 : 0) << ',' << c.eigenvalue_sign << '\n';
    log << "cusps: " << cusps.size() << " cusps, orbit size " << graph.size() << '\n';
    return 0;
}

int cmd_section(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    out << "cusp_id,x0,y0,n,weight,vertices\n";
    Rational total = 0;
    auto ctxs = selected(pl, cfg.cusp);
    for (const auto* ctx : ctxs) {
        const auto& t = ctx->triangle();
        out << ctx->cusp().index << ',' << to_string(t.x0) << ',' << to_string(t.y0) << ',' << to_string(t.n) << ','
            << to_string(t.area_weight) << ',' << format_vertices(t.vertices()) << '\n';
        total += t.area_weight;
    }
    log << "section: " << ctxs.size() << " triangles, total weight " << to_string(total) << '\n';
    return 0;
}

int cmd_partition(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    auto ctxs = selected(pl, cfg.cusp);
    std::vector<std::optional<WinnerPartition>> slots(ctxs.size());
    parallel_for(ctxs.size(), cfg.threads, [&](std::size_t i) { slots[i] = compute_partition(*ctxs[i]); });
    std::vector<std::pair<int, WinnerPartition>> parts;
    for (std::size_t i = 0; i < ctxs.size(); ++i) parts.emplace_back(cfg.cusp ? *cfg.cusp : ctxs[i]->cusp().index, std::move(*slots[i]));

    out << "region_id,winner_x,winner_y,vertices\n";
    std::size_t regions = 0;
    for (const auto& [id, part] : parts) {
        for (std::size_t k = 0; k < part.regions.size(); ++k) {
            const auto& r = part.regions[k];
            out << (cfg.cusp ? std::to_string(k) : std::to_string(id) + "." + std::to_string(k)) << ',' << r.winner.x << ','
                << r.winner.y << ',' << format_vertices(r.vertices) << '\n';
        }
        regions += part.regions.size();
    }
    if (!cfg.svg.empty()) write_svg(cfg.svg, parts);
    log << "partition: " << regions << " regions over " << parts.size() << " triangle(s)\n";
    return 0;
}

int cmd_gaps(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    EmpiricalGaps g = empirical_gaps(o, cfg.R);
    out << "gap\n";
    for (long double x : g.gaps) out << format_real(x) << '\n';
    long double mn = *std::min_element(g.gaps.begin(), g.gaps.end());
    log << "gaps: R=" << to_string(cfg.R) << " N=" << g.N() << " min=" << format_real(mn) << '\n';
    return 0;
}

int cmd_cdf(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    AnalyticCDF G = analytic_cdf(pl, cfg.threads);
    out << "t,G\n";
    for (long double t : cfg.grid.values()) out << format_real(t) << ',' << format_real(G.G(t)) << '\n';
    log << "cdf: " << G.pieces().size() << " triangles, min return time " << to_string(G.min_return_time()) << '\n';
    return 0;
}

int cmd_tail(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    AnalyticCDF G = analytic_cdf(pl, cfg.threads);
    if (!cfg.grid.log) throw FlagError("tail needs a log grid");
    out << "t,survival\n";
    for (long double t : cfg.grid.values()) out << format_real(t) << ',' << format_real(G.survival(t)) << '\n';
    long double e = tail_exponent(G, cfg.grid.min, cfg.grid.max, cfg.grid.points);
    out << "exponent=" << format_real(e) << '\n';
    log << "tail: exponent " << format_real(e) << " on [" << format_real(cfg.grid.min) << ", " << format_real(cfg.grid.max) << "]\n";
    return 0;
}

int cmd_compare(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    AnalyticCDF G = analytic_cdf(pl, cfg.threads);
    EmpiricalGaps g = empirical_gaps(*pl.graph, 0, cfg.R);
    long double ks = ks_distance(g, G);
    out << "ks=" << format_real(ks) << '\n';
    log << "compare: R=" << to_string(cfg.R) << " N=" << g.N() << " ks=" << format_real(ks) << '\n';
    return 0;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(const RunConfig& cfg, const Origami& o, std::ostream& out, std::ostream& log) {
    SurfacePipeline pl = build_pipeline(o);
    std::vector<Check> checks;
    const std::size_t nt = pl.contexts.size();

    std::vector<std::optional<WinnerPartition>> parts(nt);
    std::vector<Check> part_checks(nt), oracle_checks(nt);
    parallel_for(nt, cfg.threads, [&](std::size_t i) {
        const CuspContext& ctx = *pl.contexts[i];
        const std::string tag = "cusp " + std::to_string(ctx.cusp().index);
        try {
            parts[i] = compute_partition(ctx);
            part_checks[i] = {"partition_area " + tag, true,
                              "regions=" + std::to_string(parts[i]->regions.size()) + " area=" + to_string(parts[i]->total_area())};
        } catch (const InvariantError& e) {
            part_checks[i] = {"partition_area " + tag, false, e.what()};
            oracle_checks[i] = {"winner_oracles " + tag, false, "no partition"};
            return;
        }
        std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        BruteForceWinner brute(ctx.representative(), ctx.L(), ctx.triangle());
        std::size_t bad = 0;
        std::string first;
        for (std::size_t k = 0; k < cfg.points; ++k) {
            SectionPoint p = sample_triangle(ctx.triangle(), rng);
            HolVec w = winner_at(ctx, p).raw;
            HolVec b = brute(p);
            HolVec l = parts[i]->lookup(p);
            if (w == b && w == l) continue;
            if (bad++ == 0) first = " first=(" + to_string(p.a) + " " + to_string(p.b) + ")";
        }
        oracle_checks[i] = {"winner_oracles " + tag, bad == 0,
                            "points=" + std::to_string(cfg.points) + " mismatches=" + std::to_string(bad) + first};
    });
    for (std::size_t i = 0; i < nt; ++i) {
        checks.push_back(part_checks[i]);
        checks.push_back(oracle_checks[i]);
    }

    {
        auto e = enumerate_saddle_connections(o, cfg.R);
        auto t = trace_enumerate(o, cfg.R);
        checks.push_back({"enumeration", e.vectors == t.vectors,
                          "R=" + to_string(cfg.R) + " enumerated=" + std::to_string(e.vectors.size()) +
                              " traced=" + std::to_string(t.vectors.size())});
    }

    bool all_parts = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.has_value(); });
    if (all_parts) {
        std::vector<CdfPiece> pieces;
        for (std::size_t i = 0; i < nt; ++i) pieces.push_back({*parts[i], pl.contexts[i]->triangle().area_weight});
        AnalyticCDF G(std::move(pieces));
        const long double mrt = to_long_double(G.min_return_time());

        EmpiricalGaps g = empirical_gaps(*pl.graph, 0, cfg.R);
        long double mn = *std::min_element(g.gaps.begin(), g.gaps.end());
        long double below = G.G(mrt * (1 - 1e-12L));
        checks.push_back({"no_small_gaps", below == 0 && mn > 0.9L * mrt,
                          "min_return_time=" + to_string(G.min_return_time()) + " G_below=" + format_real(below) +
                              " min_gap=" + format_real(mn)});

        long double worst = 0;
        std::size_t evaluated = 0;
        for (const auto& pc : G.pieces())
            for (const auto& r : pc.partition.regions)
                for (long double t : cfg.grid.values()) {
                    long double a = region_tail_area(r, t), q = quadrature_tail_area(r, t);
                    long double scale = std::max(std::fabs(a), std::fabs(q));
                    if (scale > 0) worst = std::max(worst, std::fabs(a - q) / scale);
                    ++evaluated;
                }
        checks.push_back({"quadrature", worst <= 1e-10L,
                          "evaluations=" + std::to_string(evaluated) + " worst_relative=" + format_real(worst)});

        auto grid = cfg.grid.values();
        MonteCarloCdf mc = monte_carlo_cdf(pl.contexts, grid, cfg.samples, cfg.seed);
        long double worst_z = 0;
        bool ok = true;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            long double Gt = G.G(grid[k]);
            long double se = std::sqrt(Gt * (1 - Gt) / static_cast<long double>(cfg.samples));
            long double diff = std::fabs(mc.estimate[k] - Gt);
            if (se == 0) {
                if (diff != 0) ok = false;
                continue;
            }
            worst_z = std::max(worst_z, diff / se);
        }
        ok = ok && worst_z <= 3;
        checks.push_back({"monte_carlo", ok, "samples=" + std::to_string(cfg.samples) + " worst_z=" + format_real(worst_z)});
    }

    out << "check,status,detail\n";
    std::size_t failed = 0;
    for (const auto& c : checks) {
        out << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ',' << c.detail << '\n';
        if (!c.pass) ++failed;
    }
    log << "verify: " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed == 0 ? 0 : 3;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        if (cfg.R < 1) throw FlagError("--R must be at least 1");
        if (cfg.threads < 1) throw FlagError("--threads must be at least 1");
        Origami o = load_origami(cfg.origami_path);

        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw InputError("cannot write " + cfg.out);
            sink = &file;
        }
        const std::string& s = cfg.subcommand;
        if (s == "cusps") return cmd_cusps(o, *sink, log);
        if (s == "section") return cmd_section(cfg, o, *sink, log);
        if (s == "partition") return cmd_partition(cfg, o, *sink, log);
        if (s == "gaps") return cmd_gaps(cfg, o, *sink, log);
        if (s == "cdf") return cmd_cdf(cfg, o, *sink, log);
        if (s == "tail") return cmd_tail(cfg, o, *sink, log);
        if (s == "compare") return cmd_compare(cfg, o, *sink, log);
        if (s == "verify") return cmd_verify(cfg, o, *sink, log);
        throw FlagError("unknown subcommand " + s);
    } catch (const FlagError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvariantError& e) {
        log << "invariant violated: " << e.what() << '\n';
        return 3;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
    CLI::App app{"Slope gap distributions of square-tiled surfaces"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string R = "100", cusp = "all", grid, seed = "1";
    unsigned threads = default_threads();

    struct Flags {
        bool R, cusp, grid, out, svg, seed, threads, checks;
    };
    const std::vector<std::tuple<std::string, std::string, Flags>> subs = {
        {"cusps", "Cusps of the Veech group", {false, false, false, true, false, false, false, false}},
        {"section", "Section triangles of the cusps", {false, true, false, true, false, false, false, false}},
        {"partition", "Winner partition of the section triangles", {false, true, false, true, true, false, true, false}},
        {"gaps", "Renormalized slope gaps in the window", {true, false, false, true, false, false, false, false}},
        {"cdf", "Limiting gap distribution on a t grid", {false, false, true, true, false, false, true, false}},
        {"tail", "Survival function and fitted tail exponent", {false, false, true, true, false, false, true, false}},
        {"compare", "Kolmogorov-Smirnov distance of empirical and limiting gaps", {true, false, false, false, false, false, true, false}},
        {"verify", "Cross-check against the independent oracles", {true, false, true, true, false, true, true, true}},
    };
    for (const auto& [name, desc, f] : subs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("origami", cfg.origami_path, "Origami file")->required();
        if (f.R) sub->add_option("--R", R, "Window radius (rational)");
        if (f.cusp) sub->add_option("--cusp", cusp, "Cusp index or all");
        if (f.grid) sub->add_option("--grid", grid, "t grid min:max:points[:log|linear]");
        if (f.out) sub->add_option("--out", cfg.out, "CSV output path (default stdout)");
        if (f.svg) sub->add_option("--svg", cfg.svg, "SVG drawing of the partition");
        if (f.seed) sub->add_option("--seed", seed, "Random seed");
        if (f.threads) sub->add_option("--threads", threads, "Worker pool size");
        if (f.checks) {
            sub->add_option("--points", cfg.points, "Random section points per triangle");
            sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        try {
            cfg.R = parse_rational(R);
        } catch (const std::exception&) {
            throw FlagError("--R is not a rational number: " + R);
        }
        if (cusp != "all") {
            try {
                std::size_t used = 0;
                cfg.cusp = std::stoi(cusp, &used);
                if (used != cusp.size()) throw FlagError("");
            } catch (const std::exception&) {
                throw FlagError("--cusp must be an index or all");
            }
        }
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(seed, &used);
            if (used != seed.size()) throw FlagError("");
        } catch (const std::exception&) {
            throw FlagError("--seed must be a non-negative integer");
        }
        if (grid.empty()) {
            if (cfg.subcommand == "tail") grid = "10:1000:41:log";
            else if (cfg.subcommand == "verify") grid = "0.5:1000:20:log";
            else grid = "0:10:101:linear";
        }
        cfg.grid = parse_grid(grid);
        cfg.threads = threads;
        if (cfg.points < 1 || cfg.samples < 1) throw FlagError("--points and --samples must be positive");
    } catch (const FlagError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    }
    return run(cfg, out, log);
}

}  // namespace slopegap
