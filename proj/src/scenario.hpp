#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "detection.hpp"
#include "rng.hpp"

namespace pwcsim {

// Scenario names, one per reproduced figure plus "fit" for external data.
const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

struct RunOptions {
    std::string scenario;
    std::string config_path;  // empty = built-in defaults
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::optional<int> points;
    std::optional<double> duration_s;
    std::optional<int> degree;
    bool plot = true;
};

struct RunResult {
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> artifacts;  // file names inside out_dir
};

// Executes one scenario: writes the results table, the plot and a manifest
// that pins tool version, seed and every resolved config key, then returns
// the summary metrics.  Throws ConfigError / std::domain_error / FitError /
// IoError; the C API maps these onto exit codes.
RunResult run_scenario(const RunOptions& options);

// One seeded fringe scan with simultaneous background accumulation.
// Stream ids under the supplied generator: point i uses 0x100 + 4i for the
// visible middle window and 0x100 + 4i + 1 for the telecom one; background
// regions use 0x200 and 0x201.
struct FringeRun {
    std::vector<double> deltas;
    std::vector<std::uint64_t> visible_counts;
    std::vector<std::uint64_t> telecom_counts;
    std::vector<double> visible_expected_cps;   // middle window incl. noise
    std::vector<double> telecom_expected_cps;
    double visible_background_counts = 0.0;     // per-window estimate
    double telecom_background_counts = 0.0;
    double visible_background_cps = 0.0;
    double telecom_background_cps = 0.0;
};

FringeRun simulate_fringe(const CircuitConfig& config,
                          const ConverterParams& params,
                          const std::vector<double>& deltas, const Rng& rng);

std::vector<double> phase_grid(int points);
std::vector<double> linear_grid(double lo, double hi, int points);
std::vector<double> log_grid(double lo, double hi, int points);

std::vector<std::pair<double, std::uint64_t>> counts_vs_phase(
    const FringeRun& run, Band band);

}  // namespace pwcsim
