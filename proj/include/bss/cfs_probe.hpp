#pragma once

#include <cstdint>
#include <vector>

#include "bss/model.hpp"
#include "bss/simulate.hpp"

namespace bss {

// Tube half-width, either absolute or relative to the probe's path scale
// max_t sqrt(Sigma_{t,t}).
struct EpsilonSpec {
    double value = 0.25;
    bool relative = true;
};

struct TubeProbeReport {
    double t_lower = 0.0;
    double horizon = 0.0;
    std::vector<double> monitor_times;  // strictly after t_lower
    std::vector<double> target;         // target at the monitor times
    double epsilon = 0.0;               // resolved absolute half-width
    double path_scale = 0.0;            // max_t sqrt(Sigma_{t,t})
    long n_trials = 0;
    long hits = 0;
    double p_hat = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::uint64_t frozen_seed = 0;
    std::uint64_t driver_seed = 0;
    std::vector<double> sup_deviations;  // per-trial sup |Z' - target|, when recorded
};

// Monte Carlo estimate of the conditional tube probability
//   P( max_i |Z'(t_i) - target(t_i)| < eps | G_{t_lower} )
// with (Y, sigma, past driver) frozen from frozen_seed and fresh future
// drivers per trial. The target path's grid supplies the monitor times
// (each must be a sim_grid point, target(t_lower) = 0). Small monitor sets
// sample the exact conditional Gaussian law via Cholesky; monitor sets finer
// than 1024 points fall back to the discrete moving-average scheme at the
// monitor spacing.
TubeProbeReport tube_probability(const BssModel& model, const SimGrid& sim_grid, double t_lower,
                                 const SamplePath& target, EpsilonSpec eps, long n_trials,
                                 std::uint64_t frozen_seed, std::uint64_t driver_seed,
                                 bool record_deviations = false);

// One frozen realization shared by all targets, independent driver streams
// per target.
std::vector<TubeProbeReport> support_sweep(const BssModel& model, const SimGrid& sim_grid,
                                           double t_lower,
                                           const std::vector<SamplePath>& targets,
                                           EpsilonSpec eps, long n_trials, std::uint64_t seed,
                                           bool record_deviations = false);

struct CounterexampleResult {
    TubeProbeReport below_floor;  // target -1.2 t/T, eps 0.1: excluded by Z > 0
    TubeProbeReport above_floor;  // target +0.2 t/T, eps 0.3: reachable
    double min_exact_path = 0.0;  // min over trials/times of exp(B_t - t/2)
    double min_riemann_path = 0.0;  // min over trials of the Euler rendering
};

// Remark-2 geometry: Z_t = 1 + int_0^t e^{B_s - s/2} dB_s = e^{B_t - t/2},
// where sigma depends on the driver, so Z' = Z - 1 > -1 surely and a tube
// below that floor can never be hit. Simulated through the exact exponential
// identity; the Euler sum is tracked separately for its excursion size.
CounterexampleResult counterexample_probe(long n_trials, std::uint64_t seed, int n_steps = 256,
                                          int monitor_stride = 32);

}  // namespace bss
