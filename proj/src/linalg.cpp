#include "bss/linalg.hpp"

#include <cmath>

#include "bss/errors.hpp"

namespace bss {

Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& cov, double* jitter_used) {
    if (cov.rows() != cov.cols()) throw InvalidParameter("cholesky: matrix must be square");
    const auto d = cov.rows();
    if (jitter_used) *jitter_used = 0.0;
    const double trace = cov.trace();
    if (trace == 0.0 && cov.isZero(0.0)) {
        return Eigen::MatrixXd::Zero(d, d);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) return llt.matrixL();

    const double unit = trace / static_cast<double>(d);
    for (double jitter = 1e-12 * unit; jitter <= 1e-6 * unit * (1.0 + 1e-12); jitter *= 10.0) {
        Eigen::MatrixXd bumped = cov;
        bumped.diagonal().array() += jitter;
        llt.compute(bumped);
        if (llt.info() == Eigen::Success) {
            if (jitter_used) *jitter_used = jitter;
            return llt.matrixL();
        }
    }
    throw NumericalError("cholesky: factorization failed after jitter escalation to 1e-6 trace/d");
}

}  // namespace bss
