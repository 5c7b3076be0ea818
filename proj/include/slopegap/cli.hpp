#pragma once

#include "slopegap/rational.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace slopegap {

/// `min:max:points[:log|linear]`
struct TGrid {
    long double min = 0;
    long double max = 1;
    int points = 2;
    bool log = false;

    std::vector<long double> values() const;
};

TGrid parse_grid(const std::string& spec);

struct RunConfig {
    std::string subcommand;
    std::string origami_path;
    Rational R = 100;
    std::optional<int> cusp;  ///< empty means all
    TGrid grid;
    std::string out;
    std::string svg;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t points = 1000;    ///< random section points per triangle in verify
    std::size_t samples = 100000;  ///< Monte Carlo samples in verify
};

/// 17 significant digits.
std::string format_real(long double x);

/// Runs one subcommand and returns the exit status: 0 ok, 1 bad input, 2 bad flags, 3 invariant violation.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Parses argv and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace slopegap
