#ifndef PRONYLAB_CHECK_DRIVER_HPP
#define PRONYLAB_CHECK_DRIVER_HPP

#include "pronylab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pronylab {

/// Batch configuration for the Monte-Carlo theorem drivers. Zeroed fields
/// take the per-theorem defaults from default_check_config.
struct CheckConfig {
    int trials = 500;
    std::uint64_t seed0 = 0;
    int n = 0;
    int d = 0;
    int max_nodes = 0;
    double c_min = 0.0;
    double kappa = 0.0;     ///< univariate / md-order only
    double delta_min = 1e-4;
    double delta_max = 0.3;
    int angles = 360;       ///< global-w1 only
    int threads = 0;        ///< 0: hardware, capped by PRONYLAB_THREADS
    bool deterministic = false;
};

const std::vector<std::string>& known_theorems();

/// Per-theorem default parameters.
CheckConfig default_check_config(const std::string& theorem);

struct CheckSummary {
    std::vector<TheoremReport> reports; ///< in seed order
    int premise_trials = 0;
    int violations = 0; ///< premise-holding trials that failed
};

/// Runs the Monte-Carlo suite for one theorem id. Trials are independent
/// and may run in parallel; reports are merged in seed order.
CheckSummary run_check(const std::string& theorem, const CheckConfig& cfg);

/// One JSON object per line, preceded by a config line.
std::string check_to_jsonl(const std::string& theorem, const CheckConfig& cfg,
                           const CheckSummary& s);

/// Summary CSV: config comment line, a header row and one row per trial.
std::string check_to_csv(const std::string& theorem, const CheckConfig& cfg,
                         const CheckSummary& s);

std::string config_to_json(const std::string& theorem, const CheckConfig& cfg);

} // namespace pronylab

#endif
