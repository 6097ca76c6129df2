#include "bss/conditional_law.hpp"

#include <cmath>
#include <numbers>

#include "bss/errors.hpp"
#include "bss/linalg.hpp"
#include "bss/rng.hpp"

namespace bss {

double past_contribution(const BssModel& model, const SimulationResult& frozen, double t_lower,
                         double t) {
    const SimGrid& grid = frozen.grid;
    const int i_lower = grid.index_of(t_lower);
    const int i_t = grid.index_of(t);
    if (i_t < i_lower) throw DomainError("past_contribution: t must be >= t_lower");

    const KernelTaps taps(model.g(), grid.dt(), grid.n_steps);
    const double scale = model.driver_scale();
    double past_integral = 0.0;
    for (int j = 0; j < i_lower; ++j) {
        past_integral += taps[i_t - j] * scale *
                         frozen.sigma.values[static_cast<std::size_t>(j)] * frozen.d_b[j];
    }
    return frozen.y.values[static_cast<std::size_t>(i_t)] -
           frozen.z.values[static_cast<std::size_t>(i_lower)] + past_integral;
}

GaussianLaw conditional_law(const BssModel& model, const SimulationResult& frozen, double t_lower,
                            const std::vector<double>& times) {
    if (times.empty()) throw InvalidParameter("conditional_law: empty time list");
    const SimGrid& grid = frozen.grid;
    const int i_lower = grid.index_of(t_lower);
    const KernelTaps taps(model.g(), grid.dt(), grid.n_steps);
    const double scale = model.driver_scale();

    GaussianLaw law;
    law.times = times;
    law.mean.resize(static_cast<Eigen::Index>(times.size()));
    for (std::size_t k = 0; k < times.size(); ++k) {
        const int i_t = grid.index_of(times[k]);
        if (i_t <= i_lower) {
            throw DomainError("conditional_law: times must lie strictly after t_lower");
        }
        double past_integral = 0.0;
        for (int j = 0; j < i_lower; ++j) {
            past_integral += taps[i_t - j] * scale *
                             frozen.sigma.values[static_cast<std::size_t>(j)] * frozen.d_b[j];
        }
        law.mean(static_cast<Eigen::Index>(k)) =
            frozen.y.values[static_cast<std::size_t>(i_t)] -
            frozen.z.values[static_cast<std::size_t>(i_lower)] + past_integral;
    }

    SamplePath effective = frozen.sigma;
    if (scale != 1.0) {
        for (auto& v : effective.values) v *= scale;
    }
    law.cov = covariance_matrix(model.g(), effective, t_lower, times);
    return law;
}

Eigen::MatrixXd sample_gaussian(const GaussianLaw& law, int n, std::uint64_t seed) {
    if (n < 1) throw InvalidParameter("sample_gaussian: need n >= 1");
    const auto d = law.mean.size();
    const Eigen::MatrixXd L = cholesky_with_jitter(law.cov);
    Eigen::MatrixXd out(n, d);
    Eigen::VectorXd xi(d);
    for (int k = 0; k < n; ++k) {
        CounterRng rng(seed, streams::kTrialBase + static_cast<std::uint64_t>(k));
        for (Eigen::Index i = 0; i < d; ++i) xi(i) = rng.normal();
        out.row(k) = (law.mean + L * xi).transpose();
    }
    return out;
}

double log_density(const GaussianLaw& law, const Eigen::VectorXd& x) {
    const auto d = law.mean.size();
    if (x.size() != d) throw InvalidParameter("log_density: dimension mismatch");
    double jitter = 0.0;
    const Eigen::MatrixXd L = cholesky_with_jitter(law.cov, &jitter);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double l = L(i, i);
        if (!(l > 0.0)) throw NumericalError("log_density: singular covariance");
        log_det += std::log(l);
    }
    const Eigen::VectorXd w = L.triangularView<Eigen::Lower>().solve(x - law.mean);
    return -0.5 * w.squaredNorm() - log_det -
           0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi);
}

}  // namespace bss
