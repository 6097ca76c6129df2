#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bss/grid.hpp"
#include "bss/kernel.hpp"
#include "bss/model.hpp"

namespace bss {

// Discretized kernel weights on a uniform grid: taps[k] = g(k dt) for k >= 2,
// while taps[1] is the cell root-mean-square (int_0^dt g^2 / dt)^{1/2}, which
// preserves the singular cell's L^2 mass when g blows up at 0.
class KernelTaps {
public:
    KernelTaps(const Kernel& g, double dt, int n_taps);

    double operator[](int k) const { return taps_[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(taps_.size()) - 1; }
    double dt() const { return dt_; }
    bool all_equal() const { return all_equal_; }

    // sum_{k=1}^{upto} taps[k]^2 dt, the scheme's variance of a unit-sigma sum.
    double l2_prefix(int upto) const { return l2_prefix_[static_cast<std::size_t>(upto)]; }

private:
    double dt_;
    std::vector<double> taps_;       // index 0 unused (= 0)
    std::vector<double> l2_prefix_;  // l2_prefix_[k] = sum_{j<=k} taps[j]^2 dt
    bool all_equal_;
};

// Causal discrete convolution y[i] = sum_{k=1..i} taps[k] payload[i-k],
// i = 0..n with payload of length n. Uses prefix sums for flat taps, a direct
// sum for short grids and an FFT beyond that. Reusable across payloads.
class Convolver {
public:
    Convolver(const KernelTaps& taps, int n);
    // out must have length n+1.
    void apply(const std::vector<double>& payload, std::vector<double>& out) const;

private:
    const KernelTaps& taps_;
    int n_;
    enum class Mode { Flat, Direct, Fft } mode_;
    std::size_t fft_len_ = 0;
    std::vector<std::complex<double>> taps_freq_;
};

// One realization of all G_t-measurable layers of the model on a grid
// covering [-M, T]: the driver increments, sigma, Y and Z. d_b are increments
// of the standard Brownian motion B = Wbar_perp that drives the conditionally
// Gaussian part; the sqrt(1-beta^2) factor is folded into the integrand.
struct SimulationResult {
    SimGrid grid;
    std::vector<double> d_wbar;  // N(0, dt) increments, length n_steps
    std::vector<double> d_b;     // N(0, dt) increments of B, length n_steps
    SamplePath sigma;
    SamplePath drift_part;
    SamplePath y;  // mu + beta Wbar-integral + drift
    SamplePath z;  // y + sum_k taps[k] sigma~ dB

    SamplePath driver_b_path() const;     // cumulative B
    SamplePath driver_wbar_path() const;  // cumulative Wbar
};

SamplePath simulate_intermittency(const BssModel& model, const SimGrid& grid, std::uint64_t seed);

SimulationResult simulate_path(const BssModel& model, const SimGrid& grid, std::uint64_t seed);

// Sigma_{j,k} = int_{t_lower}^{t_j ^ t_k} g(t_j - s) g(t_k - s) sigma_s^2 ds
// by per-cell quadrature against the piecewise-constant (left-point) sigma
// path, with a power substitution in the cell touching the kernel
// singularity. Exactly symmetric by construction.
Eigen::MatrixXd covariance_matrix(const Kernel& g, const SamplePath& sigma_path, double t_lower,
                                  const std::vector<double>& times);

// Exact joint Gaussian sample of int_0^t g(t-s) sigma ds-type marginals on the
// grid (t_start must be 0): Cholesky of the quadrature covariance. Serves as a
// distribution-level oracle for simulate_path.
SamplePath exact_gaussian_path(const Kernel& g, double sigma_const, const SimGrid& grid,
                               std::uint64_t seed);

}  // namespace bss
