#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "truncent/ensemble.hpp"
#include "truncent/io.hpp"

namespace truncent::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 2,
    kNumericalError = 3,
    kConjectureFailed = 4,
    kIoError = 5,
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { SweepUniform, SweepRandom, CheckConjecture, Loss, Plot };

struct Options {
    Command command = Command::SweepRandom;
    SweepConfig config;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> input; // plot only
    TableFormat format = TableFormat::Csv;
    double tolerance = 0.05;
    unsigned threads = 0;
    bool help = false;
    std::string help_text;
};

// Parses "2,5,7" or ranges "3:51:2" (start:stop[:step], inclusive); mixtures are allowed.
[[nodiscard]] std::vector<int> parse_int_list(const std::string &text);

// Throws UsageError naming the offending flag.
[[nodiscard]] Options parse_config(const std::vector<std::string> &args);

struct ConjectureCell {
    int m = 0;
    int s = 0;
    double mean_K = 0.0;
    double std_K = 0.0;
    double analytic_K = 0.0;
    double relative_deviation = 0.0;
    bool outside_error_bar = false; // analytic K outside mean +- 2 std / sqrt(R)
    bool within_tolerance = false;  // |analytic - mean| <= max(tol * mean, 2 std / sqrt(R))
    bool expected_deviation = false;
};

struct ConjectureReport {
    std::vector<ConjectureCell> cells;
    double max_relative_deviation = 0.0;
    int outside_error_bar = 0;
    int failures = 0;         // out of tolerance and not an expected deviation
    int expected_deviations = 0;
    [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

// Small encodings (m < 5) at small truncations (s < n/2) are where the conjecture
// is known to undershoot the random-unitary purity; misses there are reported separately.
[[nodiscard]] bool is_expected_deviation(int n, int m, int s);

[[nodiscard]] ConjectureReport check_conjecture(const SweepConfig &config, const EnsembleStats &stats,
                                                double tolerance);

void print_report(std::ostream &os, const ConjectureReport &report, double tolerance);

// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace truncent::cli
