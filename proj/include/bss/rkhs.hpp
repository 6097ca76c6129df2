#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bss/grid.hpp"
#include "bss/kernel.hpp"

namespace bss {

// Discretization of the convolution operator
//   (K_f h)(t) = int_{t_lower}^t g(t-s) f(s) h(s) ds
// on a uniform grid over [t_lower, T]: K(i, j) = g~(t_i - s_j) f(s_j) dt for
// j < i, with the same singular-cell kernel correction as the simulator.
// Row 0 is zero, so the range lies in C_0.
struct OperatorMatrix {
    SimGrid grid;
    Eigen::MatrixXd k;               // (n+1) x n, strictly lower block
    std::vector<double> f_samples;   // f at the left points s_0..s_{n-1}
    double g_l2 = 0.0;               // ||g||_2, for the operator-norm bound

    // Cauchy-Schwarz bound ||K||_op <= ||g||_2 max|f| sqrt(T - t_lower).
    double operator_norm_bound() const;
    std::vector<double> apply(const std::vector<double>& h) const;
};

OperatorMatrix build_operator(const Kernel& g, const std::vector<double>& f_samples,
                              const SimGrid& grid);

// Default ridge 1e-10 ||K||^2 (through the operator-norm bound).
double default_ridge(const OperatorMatrix& op);

struct ApproxResult {
    std::vector<double> h_hat;  // at left points
    double sup_error = 0.0;     // max_i |(K h_hat)_i - target_i|
};

// h_hat = argmin ||K h - target||_2^2 + ridge dt ||h||_2^2; target[0] must be 0.
ApproxResult approximate_target(const OperatorMatrix& op, const std::vector<double>& target,
                                double ridge);

struct ChernyResult {
    std::vector<double> h_hat;       // step-2 coefficients (h_tilde / f off A_delta)
    double sup_error = 0.0;          // ||K_f h_hat - target||_inf
    double a_delta_measure = 0.0;    // dt |{j : |f_j| <= delta}|
    std::vector<double> h_tilde;     // step-1 coefficients against K_1
    double step1_sup_error = 0.0;    // ||K_1 h_tilde - target||_inf
};

// Two-step construction from the density argument: approximate in the range
// of K_1 (f == 1), then divide by f off the preimage A_delta = {|f| <= delta}.
ChernyResult cherny_two_step(const Kernel& g, const std::vector<double>& f_samples,
                             const std::vector<double>& target, double delta, const SimGrid& grid);

}  // namespace bss
