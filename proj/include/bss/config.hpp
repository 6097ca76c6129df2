#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bss/cfs_probe.hpp"
#include "bss/grid.hpp"
#include "bss/model.hpp"

namespace bss::config {

using json = nlohmann::ordered_json;

struct ProbeBlock {
    SimGrid monitor;           // [t_lower, probe horizon] with monitor_points steps
    std::vector<std::string> target_names;
    std::vector<SamplePath> targets;
    EpsilonSpec epsilon;
    long n_trials = 0;
    std::uint64_t frozen_seed = 0;
    std::uint64_t driver_seed = 0;
    bool record_deviations = false;
};

struct CondlawBlock {
    double t_lower = 0.0;
    std::vector<double> times;
    std::uint64_t frozen_seed = 0;
    int n_samples = 0;
    std::uint64_t sample_seed = 0;
};

struct CovarianceBlock {
    double t_lower = 0.0;
    std::vector<double> times;
    std::uint64_t sigma_seed = 0;
};

struct RkhsBlock {
    SimGrid grid;
    std::string f_kind;        // "one" | "linear" | "window_zero"
    double window_lo = 0.0, window_hi = 0.0;
    std::string target_kind;   // "hat" | "sine" | "linear" | "csv"
    std::string target_csv;
    double ridge = -1.0;       // < 0: default ridge
    std::vector<double> deltas;
};

struct SimulateBlock {
    std::uint64_t seed = 0;
};

struct CounterexampleBlock {
    long n_trials = 0;
    std::uint64_t seed = 0;
    int n_steps = 256;
    int monitor_stride = 32;
};

struct ExperimentConfig {
    json raw;                 // as loaded, for hashing and the manifest
    std::string source_path;
    std::optional<BssModel> model;
    std::optional<SimGrid> grid;
    std::optional<ProbeBlock> probe;
    std::optional<CondlawBlock> condlaw;
    std::optional<CovarianceBlock> covariance;
    std::optional<RkhsBlock> rkhs;
    std::optional<SimulateBlock> simulate;
    std::optional<CounterexampleBlock> counterexample;
    std::string output_dir = "out";
};

// Parse and validate a config file. Unknown keys anywhere raise
// InvalidParameter with the offending path.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const json& j, const std::string& source_path);

// Standard sweep target on a monitor grid: "zero", "linear:<slope>",
// "sine:<amplitude>:<cycles>" or "zigzag:<amplitude>".
SamplePath make_target(const std::string& descriptor, const SimGrid& monitor);

}  // namespace bss::config
