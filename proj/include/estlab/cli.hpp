#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace estlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
    std::string subcommand;  // est, kesten, linear-forms, curve, circle, lattice2, compare, moments
    double A = 1.0;
    std::optional<double> c;  // shorthand for c1 = 1, c2 = c
    double c1 = 1.0;
    double c2 = 2.0;
    std::int64_t N = 1000;
    std::optional<int> m;
    std::optional<int> n;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string norm = "sup";             // sup | euclid
    std::string exponent = "consistent";  // consistent | paper
    std::string sampler = "uniform";      // uniform | density | window
    std::string density = "linear_2s";    // uniform | linear_2s | truncated_gaussian
    double mu = 0.5;
    double sigma = 0.1;
    double x0 = 0.5;
    double beta = 0.25;
    std::optional<std::string> region;  // wedge | box
    double T = 5.0;
    std::string format = "csv";  // csv | json
    std::string out;             // empty: write to the output stream
    bool dry_run = false;
};

/// Runs one experiment and writes its artifact to config.out (or `out`).
/// Returns 0 on success, 2 on configuration errors, 3 on budget errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace estlab::cli
