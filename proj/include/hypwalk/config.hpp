#pragma once

#include "hypwalk/estimators.hpp"
#include "hypwalk/strips.hpp"
#include "hypwalk/walk.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypwalk {

/// Schema violations and malformed inputs; the CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A validated experiment description. One experiment = one config file.
struct ExperimentConfig {
    int schema_version = 1;
    std::string estimator;
    StepDistribution mu;
    std::uint64_t seed = 0;
    int trials = 1;
    bool allow_elementary = false;
    std::string out; // CSV artifact path ("" = stdout only)

    // generic numeric knobs (estimator-specific; validated per estimator)
    std::size_t n = 0;
    double L = 0.0;
    std::size_t k = 0;
    Rat R{0}, C{0}, C0{1}, K{1};
    bool auto_recipe = false;
    double eps = 0.1;
    std::size_t horizon = 0;
    WalkDirection direction = WalkDirection::Forward;
    int r_lo = 1, r_hi = 8;
    std::size_t walk_len = 0;
    std::size_t depth = 3;
    double buffer_factor = 2.5;
    std::size_t sim_len = 0;
    std::vector<std::size_t> ns;
    int radius = 0;

    // shadow for the hitting estimator
    Word shadow_base, shadow_center;
    Rat shadow_R{0};

    // strips data
    GroupElement v;
    std::optional<TreeEnd> alpha, beta;
};

/// Parses and validates a JSON config. Throws ConfigError with a
/// human-readable message on any schema violation.
ExperimentConfig parse_config(const std::string& json_text);

/// FNV-1a 64 over the canonicalized (sorted-key) JSON text.
std::string config_digest(const std::string& json_text);

struct RunResult {
    std::string csv;          // tabular artifact (byte-stable given the seed)
    std::string payload_json; // estimator summary
    std::string record_json;  // full result record with digest and version
    double wall_ms = 0.0;
};

/// Executes the experiment. Deterministic given (config, seed); the CSV is
/// byte-identical across runs and worker counts.
RunResult run_experiment(const ExperimentConfig& config, const std::string& raw_json,
                         int workers = 0);

/// Writes content to path via a temp file + rename.
void write_atomic(const std::string& path, const std::string& content);

std::string format_double(double v); // 12 significant digits

std::string measure_to_csv(const EmpiricalMeasure& m);

} // namespace hypwalk
