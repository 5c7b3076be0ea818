#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slopegap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace slopegap;

namespace {

struct Result {
    int code;
    std::string out;
    std::string log;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "slopegap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, log;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, log);
    return {code, out.str(), log.str()};
}

std::string data(const char* name) { return std::string(SLOPEGAP_DATA_DIR "/") + name; }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("grid parsing") {
    TGrid g = parse_grid("1:100:3:log");
    auto v = g.values();
    REQUIRE(v.size() == 3);
    CHECK(static_cast<double>(v[1]) == doctest::Approx(10));
    CHECK(parse_grid("0:1:5").values()[2] == 0.5L);
    CHECK_THROWS(parse_grid("1:1:5"));
    CHECK_THROWS(parse_grid("0:1:1"));
    CHECK_THROWS(parse_grid("0:10:5:log"));
    CHECK_THROWS(parse_grid("a:b"));
}

TEST_CASE("real formatting") {
    CHECK(format_real(1.0L / 3) == "0.33333333333333333");
    CHECK(format_real(0.1L) == "0.1");
    CHECK(format_real(2) == "2");
}

TEST_CASE("partition of L") {
    Result r = cli({"partition", data("L.origami"), "--cusp", "0"});
    CHECK(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "region_id,winner_x,winner_y,vertices");
    CHECK(l[1].rfind("0,2,2,", 0) == 0);
    CHECK(l[2].rfind("1,2,3,", 0) == 0);
    CHECK(l[3] == "2,1,2,0 1/2;1/2 0;1 -1/3;1 0");
    CHECK(lines(r.log).size() == 1);
}

TEST_CASE("svg output") {
    auto svg = std::filesystem::temp_directory_path() / "slopegap_test_part.svg";
    Result r = cli({"partition", data("L.origami"), "--cusp", "0", "--svg", svg.string()});
    CHECK(r.code == 0);
    std::string s = slurp(svg);
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("(2,3)") != std::string::npos);
    std::filesystem::remove(svg);
}

TEST_CASE("gaps has N - 1 rows and is reproducible") {
    auto path = std::filesystem::temp_directory_path() / "slopegap_test_gaps.csv";
    Result a = cli({"gaps", data("L.origami"), "--R", "100", "--out", path.string()});
    CHECK(a.code == 0);
    CHECK(a.out.empty());
    std::string first = slurp(path);
    Result b = cli({"gaps", data("L.origami"), "--R", "100", "--out", path.string()});
    CHECK(slurp(path) == first);
    auto l = lines(first);
    CHECK(l[0] == "gap");
    CHECK(a.log.find("N=" + std::to_string(l.size())) != std::string::npos);  // header + N - 1 rows
    std::filesystem::remove(path);
}

TEST_CASE("cusps schema") {
    Result r = cli({"cusps", data("torus.origami")});
    CHECK(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "cusp_id,width,orbit_repr_hash,L,alpha,n,has_minus_I,eigenvalue_sign");
    CHECK(l[1].rfind("0,1,", 0) == 0);
}

TEST_CASE("section, cdf and tail") {
    Result s = cli({"section", data("L.origami"), "--cusp", "0"});
    CHECK(lines(s.out).at(1) == "0,1,2,1,1/2,0 1/2;1 -1;1 0");
    Result c = cli({"cdf", data("torus.origami"), "--grid", "0:4:5"});
    auto l = lines(c.out);
    REQUIRE(l.size() == 6);
    CHECK(l[0] == "t,G");
    CHECK(l[2] == "1,0");
    Result t = cli({"tail", data("torus.origami")});
    auto tl = lines(t.out);
    CHECK(tl[0] == "t,survival");
    CHECK(tl.back().rfind("exponent=-2.0", 0) == 0);
    CHECK(tl.size() == 43);
}

TEST_CASE("compare") {
    Result r = cli({"compare", data("torus.origami"), "--R", "300"});
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("ks=", 0) == 0);
    CHECK(std::stod(r.out.substr(3)) < 0.01);
}

TEST_CASE("verify on small surfaces") {
    Result r = cli({"verify", data("torus.origami"), "--R", "20", "--points", "200", "--samples", "20000", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    Result again = cli({"verify", data("torus.origami"), "--R", "20", "--points", "200", "--samples", "20000", "--seed", "3", "--threads", "3"});
    CHECK(again.out == r.out);
    Result c = cli({"verify", data("cyl2.origami"), "--R", "20", "--points", "200", "--samples", "20000", "--seed", "3"});
    CHECK(c.code == 0);
}

TEST_CASE("exit codes") {
    CHECK(cli({"gaps", "/nonexistent.origami"}).code == 1);
    auto bad = std::filesystem::temp_directory_path() / "slopegap_bad.origami";
    std::ofstream(bad) << "n=2\nh=()\nv=()\n";
    CHECK(cli({"cusps", bad.string()}).code == 1);
    std::filesystem::remove(bad);
    CHECK(cli({"gaps", data("L.origami"), "--R", "0"}).code == 2);
    CHECK(cli({"gaps", data("L.origami"), "--R", "abc"}).code == 2);
    CHECK(cli({"gaps", data("L.origami"), "--cusp", "0"}).code == 2);
    CHECK(cli({"partition", data("L.origami"), "--cusp", "99"}).code == 2);
    CHECK(cli({"cdf", data("L.origami"), "--grid", "5:1:3"}).code == 2);
    CHECK(cli({"frobnicate", data("L.origami")}).code == 2);
    CHECK(cli({}).code == 2);
}
