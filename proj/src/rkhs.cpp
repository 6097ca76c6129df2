#include "bss/rkhs.hpp"

#include <algorithm>
#include <cmath>

#include "bss/errors.hpp"
#include "bss/simulate.hpp"

namespace bss {

double OperatorMatrix::operator_norm_bound() const {
    double fmax = 0.0;
    for (double f : f_samples) fmax = std::max(fmax, std::fabs(f));
    return g_l2 * fmax * std::sqrt(grid.t_end - grid.t_start);
}

std::vector<double> OperatorMatrix::apply(const std::vector<double>& h) const {
    if (h.size() != static_cast<std::size_t>(grid.n_steps)) {
        throw InvalidParameter("OperatorMatrix::apply: h must be sampled at the left points");
    }
    Eigen::Map<const Eigen::VectorXd> hv(h.data(), static_cast<Eigen::Index>(h.size()));
    const Eigen::VectorXd y = k * hv;
    return std::vector<double>(y.data(), y.data() + y.size());
}

OperatorMatrix build_operator(const Kernel& g, const std::vector<double>& f_samples,
                              const SimGrid& grid) {
    const int n = grid.n_steps;
    if (n < 2) throw InvalidParameter("build_operator: need n_steps >= 2");
    if (f_samples.size() != static_cast<std::size_t>(n)) {
        throw InvalidParameter("build_operator: f must be sampled at the n left points");
    }
    const double dt = grid.dt();
    const KernelTaps taps(g, dt, n);

    OperatorMatrix op;
    op.grid = grid;
    op.f_samples = f_samples;
    op.g_l2 = std::sqrt(g.l2_norm_sq());
    op.k = Eigen::MatrixXd::Zero(n + 1, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j < i; ++j) {
            op.k(i, j) = taps[i - j] * f_samples[static_cast<std::size_t>(j)] * dt;
        }
    }
    return op;
}

double default_ridge(const OperatorMatrix& op) {
    const double bound = op.operator_norm_bound();
    return 1e-10 * bound * bound;
}

ApproxResult approximate_target(const OperatorMatrix& op, const std::vector<double>& target,
                                double ridge) {
    const int n = op.grid.n_steps;
    if (target.size() != static_cast<std::size_t>(n) + 1) {
        throw InvalidParameter("approximate_target: target must live on the grid points");
    }
    if (target[0] != 0.0) {
        throw InvalidParameter("approximate_target: target must vanish at t_lower (C_0)");
    }
    if (ridge < 0.0) throw InvalidParameter("approximate_target: ridge must be >= 0");

    Eigen::Map<const Eigen::VectorXd> y(target.data(), n + 1);
    Eigen::MatrixXd normal = op.k.transpose() * op.k;
    normal.diagonal().array() += ridge * op.grid.dt();
    const Eigen::VectorXd rhs = op.k.transpose() * y;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("approximate_target: normal-equation factorization failed");
    }
    const Eigen::VectorXd h = ldlt.solve(rhs);
    if (!h.allFinite()) {
        throw NumericalError("approximate_target: non-finite least-squares solution");
    }

    ApproxResult out;
    out.h_hat.assign(h.data(), h.data() + h.size());
    const Eigen::VectorXd fit = op.k * h;
    out.sup_error = (fit - y).cwiseAbs().maxCoeff();
    return out;
}

ChernyResult cherny_two_step(const Kernel& g, const std::vector<double>& f_samples,
                             const std::vector<double>& target, double delta,
                             const SimGrid& grid) {
    if (!(delta > 0.0)) throw InvalidParameter("cherny_two_step: delta must be positive");
    const int n = grid.n_steps;
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    const OperatorMatrix k1 = build_operator(g, ones, grid);
    const ApproxResult step1 = approximate_target(k1, target, default_ridge(k1));

    ChernyResult out;
    out.h_tilde = step1.h_hat;
    out.step1_sup_error = step1.sup_error;
    out.h_hat.assign(static_cast<std::size_t>(n), 0.0);
    int in_a_delta = 0;
    for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (std::fabs(f_samples[ju]) <= delta) {
            ++in_a_delta;
        } else {
            out.h_hat[ju] = step1.h_hat[ju] / f_samples[ju];
        }
    }
    out.a_delta_measure = grid.dt() * static_cast<double>(in_a_delta);

    const OperatorMatrix kf = build_operator(g, f_samples, grid);
    const std::vector<double> fit = kf.apply(out.h_hat);
    double sup = 0.0;
    for (std::size_t i = 0; i < fit.size(); ++i) {
        sup = std::max(sup, std::fabs(fit[i] - target[i]));
    }
    out.sup_error = sup;
    return out;
}

}  // namespace bss
