#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bss/model.hpp"
#include "bss/simulate.hpp"

namespace bss {

// Finite-dimensional Gaussian law N_d(mean, cov) of the recentred process
// Z' = Z - Z_{t_lower} at the given times, conditionally on the frozen
// (Y, sigma, past driver).
struct GaussianLaw {
    std::vector<double> times;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

// Y'_t = Y_t - Z_{t_lower} + sum_{s_j < t_lower} g(t - s_j) sigma~_j dB_j,
// the deterministic part of Z' given the frozen realization. t and t_lower
// must be grid points.
double past_contribution(const BssModel& model, const SimulationResult& frozen, double t_lower,
                         double t);

// mean[j] = past_contribution at times[j]; cov from covariance_matrix with the
// effective integrand sqrt(1-beta^2) sigma. Times must be grid points in
// (t_lower, T].
GaussianLaw conditional_law(const BssModel& model, const SimulationResult& frozen, double t_lower,
                            const std::vector<double>& times);

// n x d matrix of draws; row k uses the per-trial stream (seed, k), so the
// result is independent of how rows are scheduled across workers.
Eigen::MatrixXd sample_gaussian(const GaussianLaw& law, int n, std::uint64_t seed);

// log phi_d(x; mean, cov); NumericalError when cov is singular beyond jitter.
double log_density(const GaussianLaw& law, const Eigen::VectorXd& x);

}  // namespace bss
