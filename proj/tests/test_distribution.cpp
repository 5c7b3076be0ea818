#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopegap/distribution.hpp"

#include <algorithm>
#include <cmath>

using namespace slopegap;

namespace {

Origami load(const char* name) { return load_origami(std::string(SLOPEGAP_DATA_DIR "/") + name); }

}  // namespace

TEST_CASE("Farey gaps at R = 5") {
    EmpiricalGaps g = empirical_gaps(Origami::torus(), Rational(5));
    CHECK(g.N() == 11);
    REQUIRE(g.gaps.size() == 10);
    // 25 / (q q') over consecutive fractions of F_5.
    std::vector<Rational> expect{make_rational(5), make_rational(5, 4), make_rational(25, 12), make_rational(5, 3), make_rational(5, 2),
                                 make_rational(5, 2), make_rational(5, 3), make_rational(25, 12), make_rational(5, 4), make_rational(5)};
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(g.exact_gap(i) == expect[i]);
        CHECK(g.gaps[i] == doctest::Approx(to_long_double(expect[i])));
    }
    CHECK_THROWS_AS(empirical_gaps(Origami::torus(), Rational(0)), InputError);
}

TEST_CASE("torus limiting distribution") {
    AnalyticCDF G = analytic_cdf(build_pipeline(Origami::torus()));
    CHECK(G.min_return_time() == 1);
    CHECK(G.G(0.5L) == 0);
    CHECK(G.G(0.999L) == 0);
    // 1 - 2 A(t), A the area under the hyperbola b = 1/(a t) - a inside the triangle.
    CHECK(static_cast<double>(G.G(2)) == doctest::Approx(0.306852819440054690582767878542).epsilon(1e-15));
    CHECK(static_cast<double>(G.G(3)) == doctest::Approx(0.600925140887926872403169842052).epsilon(1e-15));
    CHECK(static_cast<double>(G.G(10)) == doctest::Approx(0.977573725938819595506004863631).epsilon(1e-15));
    CHECK(static_cast<double>(G.survival(100)) == doctest::Approx(2 * 0.000101017025292979563800897807981).epsilon(1e-12));
    CHECK(G.total_weight() == make_rational(1, 2));
}

TEST_CASE("G is a distribution function") {
    AnalyticCDF G = analytic_cdf(build_pipeline(load("L.origami")));
    long double prev = 0;
    for (int i = 0; i <= 400; ++i) {
        long double t = i * 0.05L;
        long double g = G.G(t);
        CHECK(g >= prev - 1e-15L);
        CHECK(g <= 1);
        prev = g;
    }
    CHECK(G.G(1e6L) == doctest::Approx(1).epsilon(1e-9));
    CHECK(G.G(to_long_double(G.min_return_time()) * (1 - 1e-12L)) == 0);
    auto crit = G.critical_values();
    CHECK(std::is_sorted(crit.begin(), crit.end()));
    CHECK(crit.front() == G.min_return_time());
}

TEST_CASE("threads do not change the result") {
    auto pl = build_pipeline(load("L.origami"));
    AnalyticCDF a = analytic_cdf(pl, 1), b = analytic_cdf(pl, 4);
    for (long double t : {0.5L, 1.5L, 2.5L, 7.0L, 40.0L}) CHECK(a.G(t) == b.G(t));
}

TEST_CASE("ks distance") {
    std::vector<long double> s{1, 2, 3};
    long double d = ks_distance(s, [](long double x) { return std::clamp(x / 4, 0.0L, 1.0L); });
    CHECK(static_cast<double>(d) == doctest::Approx(0.25));
    std::vector<long double> tie{1, 1, 3, 3};
    CHECK(static_cast<double>(ks_distance(tie, [](long double x) { return x / 4; })) == doctest::Approx(0.25));
}

TEST_CASE("log-log slope") {
    long double e = fit_loglog_slope([](long double t) { return 3 / (t * t); }, 10, 1000);
    CHECK(static_cast<double>(e) == doctest::Approx(-2).epsilon(1e-12));
    AnalyticCDF G = analytic_cdf(build_pipeline(Origami::torus()));
    long double torus = tail_exponent(G, 10, 1000);
    CHECK(torus <= -1.9L);
    CHECK(torus >= -2.1L);
}

TEST_CASE("torus empirical gaps match the limit") {
    auto pl = build_pipeline(Origami::torus());
    AnalyticCDF G = analytic_cdf(pl);
    EmpiricalGaps g = empirical_gaps(*pl.graph, 0, Rational(400));
    CHECK(ks_distance(g, G) < 0.01L);
}
