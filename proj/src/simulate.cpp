#include "bss/simulate.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

#include "bss/errors.hpp"
#include "bss/linalg.hpp"
#include "bss/quadrature.hpp"
#include "bss/rng.hpp"

namespace bss {

namespace {

constexpr int kDirectConvLimit = 768;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<double> brownian_increments(CounterRng& rng, int n, double dt) {
    std::vector<double> inc(static_cast<std::size_t>(n));
    const double s = std::sqrt(dt);
    for (auto& x : inc) x = s * rng.normal();
    return inc;
}

}  // namespace

KernelTaps::KernelTaps(const Kernel& g, double dt, int n_taps) : dt_(dt) {
    if (!(dt > 0.0) || n_taps < 1) throw InvalidParameter("KernelTaps: need dt > 0, n_taps >= 1");
    taps_.assign(static_cast<std::size_t>(n_taps) + 1, 0.0);
    taps_[1] = std::sqrt(g.l2_head(dt) / dt);
    const double end = g.support_end();
    for (int k = 2; k <= n_taps; ++k) {
        const double lag = static_cast<double>(k) * dt;
        taps_[static_cast<std::size_t>(k)] = (lag > end) ? 0.0 : g(lag);
    }
    l2_prefix_.assign(taps_.size(), 0.0);
    for (std::size_t k = 1; k < taps_.size(); ++k) {
        l2_prefix_[k] = l2_prefix_[k - 1] + taps_[k] * taps_[k] * dt;
    }
    all_equal_ = true;
    for (std::size_t k = 2; k < taps_.size(); ++k) {
        if (taps_[k] != taps_[1]) {
            all_equal_ = false;
            break;
        }
    }
}

Convolver::Convolver(const KernelTaps& taps, int n) : taps_(taps), n_(n) {
    if (taps.size() < n) throw InvalidParameter("Convolver: taps shorter than grid");
    if (taps.all_equal()) {
        mode_ = Mode::Flat;
    } else if (n <= kDirectConvLimit) {
        mode_ = Mode::Direct;
    } else {
        mode_ = Mode::Fft;
        fft_len_ = next_pow2(2 * static_cast<std::size_t>(n) + 1);
        std::vector<double> t(fft_len_, 0.0);
        for (int k = 1; k <= n; ++k) t[static_cast<std::size_t>(k)] = taps_[k];
        Eigen::FFT<double> fft;
        fft.fwd(taps_freq_, t);
    }
}

void Convolver::apply(const std::vector<double>& payload, std::vector<double>& out) const {
    const auto n = static_cast<std::size_t>(n_);
    if (payload.size() != n || out.size() != n + 1) {
        throw InvalidParameter("Convolver: payload/output length mismatch");
    }
    out[0] = 0.0;
    switch (mode_) {
        case Mode::Flat: {
            const double c = taps_[1];
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += payload[i];
                out[i + 1] = c * acc;
            }
            break;
        }
        case Mode::Direct: {
            for (std::size_t i = 1; i <= n; ++i) {
                double acc = 0.0;
                for (std::size_t k = 1; k <= i; ++k) {
                    acc += taps_[static_cast<int>(k)] * payload[i - k];
                }
                out[i] = acc;
            }
            break;
        }
        case Mode::Fft: {
            std::vector<double> p(fft_len_, 0.0);
            std::copy(payload.begin(), payload.end(), p.begin());
            Eigen::FFT<double> fft;
            std::vector<std::complex<double>> pf;
            fft.fwd(pf, p);
            for (std::size_t i = 0; i < fft_len_; ++i) pf[i] *= taps_freq_[i];
            std::vector<double> conv;
            fft.inv(conv, pf);
            for (std::size_t i = 1; i <= n; ++i) out[i] = conv[i];
            break;
        }
    }
}

SamplePath SimulationResult::driver_b_path() const {
    SamplePath p{grid, std::vector<double>(static_cast<std::size_t>(grid.n_points()), 0.0),
                 PathRole::DriverB};
    for (std::size_t i = 0; i < d_b.size(); ++i) p.values[i + 1] = p.values[i] + d_b[i];
    return p;
}

SamplePath SimulationResult::driver_wbar_path() const {
    SamplePath p{grid, std::vector<double>(static_cast<std::size_t>(grid.n_points()), 0.0),
                 PathRole::DriverWbar};
    for (std::size_t i = 0; i < d_wbar.size(); ++i) p.values[i + 1] = p.values[i] + d_wbar[i];
    return p;
}

SamplePath simulate_intermittency(const BssModel& model, const SimGrid& grid, std::uint64_t seed) {
    return model.sigma().sample(grid, seed, streams::kSigma);
}

SimulationResult simulate_path(const BssModel& model, const SimGrid& grid, std::uint64_t seed) {
    model.check_invariants();
    if (!grid.covers(-model.truncation_M(), model.horizon())) {
        throw InvalidParameter("simulate_path: grid must cover [-M, T] = [" +
                               std::to_string(-model.truncation_M()) + ", " +
                               std::to_string(model.horizon()) + "]");
    }
    const int n = grid.n_steps;
    const double dt = grid.dt();

    SimulationResult res;
    res.grid = grid;
    res.sigma = simulate_intermittency(model, grid, seed);

    CounterRng rng_wbar(seed, streams::kWbar);
    CounterRng rng_wperp(seed, streams::kWperp);
    res.d_wbar = brownian_increments(rng_wbar, n, dt);
    res.d_b = brownian_increments(rng_wperp, n, dt);

    const KernelTaps taps(model.g(), dt, n);
    const Convolver conv(taps, n);
    const double scale = model.driver_scale();
    const double beta = model.beta();

    std::vector<double> payload(static_cast<std::size_t>(n));
    std::vector<double> main_part(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
        payload[j] = scale * res.sigma.values[static_cast<std::size_t>(j)] * res.d_b[j];
    }
    conv.apply(payload, main_part);

    std::vector<double> ybar(static_cast<std::size_t>(n) + 1, 0.0);
    if (beta != 0.0) {
        for (int j = 0; j < n; ++j) {
            payload[j] = beta * res.sigma.values[static_cast<std::size_t>(j)] * res.d_wbar[j];
        }
        conv.apply(payload, ybar);
    }

    res.drift_part = SamplePath{grid,
                                std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0),
                                PathRole::DriftPart};
    if (model.drift().present()) {
        const KernelTaps qtaps(*model.drift().q, dt, n);
        const Convolver qconv(qtaps, n);
        const SamplePath a_path =
            model.drift().multiplier().sample(grid, seed, streams::kDriftA);
        for (int j = 0; j < n; ++j) {
            payload[j] = a_path.values[static_cast<std::size_t>(j)] * dt;
        }
        qconv.apply(payload, res.drift_part.values);
    }

    res.y = SamplePath{grid, std::vector<double>(static_cast<std::size_t>(n) + 1), PathRole::YPart};
    res.z = SamplePath{grid, std::vector<double>(static_cast<std::size_t>(n) + 1), PathRole::Z};
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        res.y.values[i] = model.mu() + ybar[i] + res.drift_part.values[i];
        res.z.values[i] = res.y.values[i] + main_part[i];
        if (!std::isfinite(res.z.values[i])) {
            throw NumericalError("simulate_path: non-finite value at grid index " +
                                 std::to_string(i));
        }
    }
    return res;
}

Eigen::MatrixXd covariance_matrix(const Kernel& g, const SamplePath& sigma_path, double t_lower,
                                  const std::vector<double>& times) {
    if (times.empty()) throw InvalidParameter("covariance_matrix: empty time list");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] <= times[i + 1])) {
            throw InvalidParameter("covariance_matrix: times must be sorted");
        }
    }
    const SimGrid& sg = sigma_path.grid;
    if (times.front() < t_lower - 1e-12 || !sg.covers(t_lower, times.back())) {
        throw DomainError("covariance_matrix: times outside [t_lower, sigma domain]");
    }
    const double kap = g.singularity_exponent();
    const double support = g.support_end();
    const int d = static_cast<int>(times.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);

    const double dt = sg.dt();
    const int m_lo = std::max(0, static_cast<int>(std::floor((t_lower - sg.t_start) / dt - 1e-9)));
    for (int a = 0; a < d; ++a) {
        const double tj = times[a];
        for (int b = a; b < d; ++b) {
            const double tk = times[b];
            const double delta = tk - tj;
            if (delta > support) continue;  // g(u + delta) vanishes on the whole range
            double acc = 0.0;
            for (int m = m_lo; m < sg.n_steps; ++m) {
                const double c0 = std::max(sg.point(m), t_lower);
                const double c1 = std::min(sg.point(m + 1), tj);
                if (c1 <= c0) {
                    if (sg.point(m) >= tj) break;
                    continue;
                }
                const double sig = sigma_path.values[static_cast<std::size_t>(m)];
                if (sig == 0.0) continue;
                const double u_lo = tj - c1;
                const double u_hi = tj - c0;
                auto f = [&](double u) {
                    const double g1 = (u > support) ? 0.0 : g(u);
                    const double u2 = u + delta;
                    const double g2 = (u2 > support || !(u2 > 0.0)) ? 0.0 : g(u2);
                    return g1 * g2;
                };
                double cell;
                if (u_lo <= 1e-15 * tj && kap != 0.0) {
                    const double p = (delta == 0.0) ? 2.0 * kap : kap;
                    cell = quad::integrate_power_left(f, 0.0, u_hi, p,
                                                      quad::Options{1e-16, 1e-10, 600})
                               .resolve("covariance singular cell");
                } else {
                    cell = quad::fixed_gk15(f, u_lo, u_hi);
                }
                acc += sig * sig * cell;
            }
            cov(a, b) = acc;
            cov(b, a) = acc;
        }
    }
    return cov;
}

SamplePath exact_gaussian_path(const Kernel& g, double sigma_const, const SimGrid& grid,
                               std::uint64_t seed) {
    if (grid.t_start != 0.0) {
        throw InvalidParameter("exact_gaussian_path: grid must start at t = 0 (pathless past)");
    }
    const int n = grid.n_steps;
    SamplePath sigma{grid,
                     std::vector<double>(static_cast<std::size_t>(n) + 1, sigma_const),
                     PathRole::Sigma};
    std::vector<double> times(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) times[static_cast<std::size_t>(i - 1)] = grid.point(i);

    const Eigen::MatrixXd cov = covariance_matrix(g, sigma, 0.0, times);
    const Eigen::MatrixXd L = cholesky_with_jitter(cov);

    CounterRng rng(seed, streams::kExactPath);
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) xi(i) = rng.normal();
    const Eigen::VectorXd x = L * xi;

    SamplePath out{grid, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0), PathRole::Z};
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i + 1)] = x(i);
    return out;
}

}  // namespace bss
