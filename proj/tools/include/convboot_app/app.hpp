#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace convboot::app {

inline constexpr const char* kReportSchema = "convboot.report/1";

/// Everything a subcommand can be told. Fields a command does not use are
/// ignored.
struct Options {
    std::string input;
    std::string output;
    std::string cdf_dump;

    // grid
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::optional<double> grid_step;
    std::optional<std::size_t> grid_points;
    std::string mode; // exact | bounds; empty picks the command default

    std::vector<double> probs;
    std::vector<double> at;
    std::optional<double> shift;

    // degradation
    std::vector<double> thresholds;
    std::optional<double> period;
    bool pooled = false;
    double p = 0.5;
    std::optional<std::vector<double>> bracket;
    double quantile_tol = 1e-3;

    // first passage
    double horizon = 30.0;
    double tail_eps = 1e-4;

    // monte carlo
    std::string statistic = "mean";
    std::size_t samples = 100'000;
    std::size_t reps = 1;
    std::uint64_t seed = 1;

    // bench
    unsigned n_min = 8;
    unsigned n_max = 20;
    unsigned repeats = 5;
    std::vector<std::size_t> mc_samples{1'000, 4'000, 16'000, 64'000};
};

nlohmann::json cmd_mean(const Options& opt);
nlohmann::json cmd_signflip(const Options& opt);
nlohmann::json cmd_degradation(const Options& opt);
nlohmann::json cmd_first_passage(const Options& opt);
nlohmann::json cmd_mc(const Options& opt);
nlohmann::json cmd_bench(const Options& opt);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Full command line entry point; returns the process exit status
/// (0 ok, 2 parse error, 3 precondition violation, 4 numerical failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace convboot::app
