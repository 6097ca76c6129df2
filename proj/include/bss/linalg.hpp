#pragma once

#include <Eigen/Dense>

namespace bss {

// Lower Cholesky factor of cov, adding diagonal jitter when the matrix is
// numerically semidefinite: start at 1e-12 trace/d, escalate x10 up to
// 1e-6 trace/d, then throw NumericalError. A zero matrix yields a zero factor.
Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& cov, double* jitter_used = nullptr);

}  // namespace bss
