#include "bss/cfs_probe.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bss/conditional_law.hpp"
#include "bss/errors.hpp"
#include "bss/linalg.hpp"
#include "bss/rng.hpp"
#include "bss/stats.hpp"

namespace bss {

namespace {

constexpr int kDenseLawLimit = 1024;

void finalize_counts(TubeProbeReport& rep) {
    rep.p_hat = static_cast<double>(rep.hits) / static_cast<double>(rep.n_trials);
    const auto iv = stats::wilson_interval(rep.hits, rep.n_trials);
    rep.wilson_lo = iv.lo;
    rep.wilson_hi = iv.hi;
}

TubeProbeReport probe_with_frozen(const BssModel& model, const SimulationResult& frozen,
                                  double t_lower, const SamplePath& target, EpsilonSpec eps,
                                  long n_trials, std::uint64_t frozen_seed,
                                  std::uint64_t driver_seed, bool record_deviations) {
    if (n_trials < 1) throw InvalidParameter("tube_probability: need n_trials >= 1");
    const SimGrid& monitor = target.grid;
    target.check_shape();
    if (target.values[0] != 0.0) {
        throw InvalidParameter("tube_probability: target must vanish at t_lower");
    }
    if (std::fabs(monitor.t_start - t_lower) > 1e-9 * (monitor.t_end - monitor.t_start)) {
        throw InvalidParameter("tube_probability: target grid must start at t_lower");
    }
    const int d = monitor.n_steps;
    std::vector<double> times(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) {
        const double t = monitor.point(i);
        frozen.grid.index_of(t);  // DomainError when a monitor time is off the sim grid
        times[static_cast<std::size_t>(i - 1)] = t;
    }

    TubeProbeReport rep;
    rep.t_lower = t_lower;
    rep.horizon = monitor.t_end;
    rep.monitor_times = times;
    rep.target.assign(target.values.begin() + 1, target.values.end());
    rep.n_trials = n_trials;
    rep.frozen_seed = frozen_seed;
    rep.driver_seed = driver_seed;

    std::vector<double> devs(record_deviations ? static_cast<std::size_t>(n_trials) : 0u);
    std::vector<unsigned char> hit(static_cast<std::size_t>(n_trials), 0);

    if (d <= kDenseLawLimit) {
        const GaussianLaw law = conditional_law(model, frozen, t_lower, times);
        double var_max = 0.0;
        for (Eigen::Index i = 0; i < law.cov.rows(); ++i) {
            var_max = std::max(var_max, law.cov(i, i));
        }
        rep.path_scale = std::sqrt(var_max);
        rep.epsilon = eps.relative ? eps.value * rep.path_scale : eps.value;
        const Eigen::MatrixXd L = cholesky_with_jitter(law.cov);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long k = 0; k < n_trials; ++k) {
            CounterRng rng(driver_seed, streams::kTrialBase + static_cast<std::uint64_t>(k));
            Eigen::VectorXd xi(d);
            for (int i = 0; i < d; ++i) xi(i) = rng.normal();
            double sup = 0.0;
            for (int i = 0; i < d; ++i) {
                double x = law.mean(i);
                for (int j = 0; j <= i; ++j) x += L(i, j) * xi(j);
                sup = std::max(sup, std::fabs(x - rep.target[static_cast<std::size_t>(i)]));
            }
            hit[static_cast<std::size_t>(k)] = sup < rep.epsilon ? 1 : 0;
            if (record_deviations) devs[static_cast<std::size_t>(k)] = sup;
        }
    } else {
        // Scheme sampler on the monitor grid; requires monitor spacing == sim spacing.
        const double dtm = monitor.dt();
        if (std::fabs(dtm - frozen.grid.dt()) > 1e-12 * dtm) {
            throw InvalidParameter(
                "tube_probability: dense monitor grids must match the simulation spacing");
        }
        const KernelTaps taps(model.g(), dtm, d);
        const Convolver conv(taps, d);
        const double scale = model.driver_scale();
        const double sqrt_dt = std::sqrt(dtm);

        std::vector<double> sig_future(static_cast<std::size_t>(d));
        const int base = frozen.grid.index_of(t_lower);
        for (int j = 0; j < d; ++j) {
            sig_future[static_cast<std::size_t>(j)] =
                scale * frozen.sigma.values[static_cast<std::size_t>(base + j)];
        }
        std::vector<double> mean(static_cast<std::size_t>(d) + 1, 0.0);
        {
            const KernelTaps full_taps(model.g(), frozen.grid.dt(), frozen.grid.n_steps);
            for (int i = 1; i <= d; ++i) {
                const int i_t = base + i;
                double past = 0.0;
                for (int j = 0; j < base; ++j) {
                    past += full_taps[i_t - j] * scale *
                            frozen.sigma.values[static_cast<std::size_t>(j)] * frozen.d_b[j];
                }
                mean[static_cast<std::size_t>(i)] =
                    frozen.y.values[static_cast<std::size_t>(i_t)] -
                    frozen.z.values[static_cast<std::size_t>(base)] + past;
            }
        }
        double var_max = 0.0;
        for (int i = 1; i <= d; ++i) {
            double v = 0.0;
            for (int j = 0; j < i; ++j) {
                const double w = taps[i - j] * sig_future[static_cast<std::size_t>(j)];
                v += w * w * dtm;
            }
            var_max = std::max(var_max, v);
        }
        rep.path_scale = std::sqrt(var_max);
        rep.epsilon = eps.relative ? eps.value * rep.path_scale : eps.value;

#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            std::vector<double> payload(static_cast<std::size_t>(d));
            std::vector<double> z(static_cast<std::size_t>(d) + 1);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (long k = 0; k < n_trials; ++k) {
                CounterRng rng(driver_seed, streams::kTrialBase + static_cast<std::uint64_t>(k));
                for (int j = 0; j < d; ++j) {
                    payload[static_cast<std::size_t>(j)] =
                        sig_future[static_cast<std::size_t>(j)] * sqrt_dt * rng.normal();
                }
                conv.apply(payload, z);
                double sup = 0.0;
                for (int i = 1; i <= d; ++i) {
                    const double x = mean[static_cast<std::size_t>(i)] +
                                     z[static_cast<std::size_t>(i)];
                    sup = std::max(sup,
                                   std::fabs(x - rep.target[static_cast<std::size_t>(i - 1)]));
                }
                hit[static_cast<std::size_t>(k)] = sup < rep.epsilon ? 1 : 0;
                if (record_deviations) devs[static_cast<std::size_t>(k)] = sup;
            }
        }
    }

    long hits = 0;
    for (unsigned char h : hit) hits += h;
    rep.hits = hits;
    rep.sup_deviations = std::move(devs);
    finalize_counts(rep);
    return rep;
}

}  // namespace

TubeProbeReport tube_probability(const BssModel& model, const SimGrid& sim_grid, double t_lower,
                                 const SamplePath& target, EpsilonSpec eps, long n_trials,
                                 std::uint64_t frozen_seed, std::uint64_t driver_seed,
                                 bool record_deviations) {
    if (!validate_model(model).overall) {
        throw InvalidParameter("tube_probability: model fails validation");
    }
    const SimulationResult frozen = simulate_path(model, sim_grid, frozen_seed);
    return probe_with_frozen(model, frozen, t_lower, target, eps, n_trials, frozen_seed,
                             driver_seed, record_deviations);
}

std::vector<TubeProbeReport> support_sweep(const BssModel& model, const SimGrid& sim_grid,
                                           double t_lower,
                                           const std::vector<SamplePath>& targets,
                                           EpsilonSpec eps, long n_trials, std::uint64_t seed,
                                           bool record_deviations) {
    if (!validate_model(model).overall) {
        throw InvalidParameter("support_sweep: model fails validation");
    }
    const SimulationResult frozen = simulate_path(model, sim_grid, seed);
    std::vector<TubeProbeReport> out;
    out.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::uint64_t driver = mix64(seed + 0x51ed2701a9b3c557ULL * (i + 1));
        out.push_back(probe_with_frozen(model, frozen, t_lower, targets[i], eps, n_trials, seed,
                                        driver, record_deviations));
    }
    return out;
}

CounterexampleResult counterexample_probe(long n_trials, std::uint64_t seed, int n_steps,
                                          int monitor_stride) {
    if (n_trials < 1) throw InvalidParameter("counterexample_probe: need n_trials >= 1");
    if (n_steps < monitor_stride || monitor_stride < 1 || n_steps % monitor_stride != 0) {
        throw InvalidParameter("counterexample_probe: monitor_stride must divide n_steps");
    }
    constexpr double kT = 1.0;
    const double dt = kT / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    const int d = n_steps / monitor_stride;

    auto make_report = [&](double slope, double epsilon) {
        TubeProbeReport rep;
        rep.t_lower = 0.0;
        rep.horizon = kT;
        rep.epsilon = epsilon;
        rep.n_trials = n_trials;
        rep.frozen_seed = seed;
        rep.driver_seed = seed;
        for (int m = 1; m <= d; ++m) {
            const double t = static_cast<double>(m * monitor_stride) * dt;
            rep.monitor_times.push_back(t);
            rep.target.push_back(slope * t / kT);
        }
        return rep;
    };
    CounterexampleResult res;
    res.below_floor = make_report(-1.2, 0.1);
    res.above_floor = make_report(0.2, 0.3);

    std::vector<unsigned char> hit_below(static_cast<std::size_t>(n_trials), 0);
    std::vector<unsigned char> hit_above(static_cast<std::size_t>(n_trials), 0);
    std::vector<double> min_exact(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> min_riemann(static_cast<std::size_t>(n_trials), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long k = 0; k < n_trials; ++k) {
        CounterRng rng(seed, streams::kTrialBase + static_cast<std::uint64_t>(k));
        double b = 0.0;
        double z_exact = 1.0;     // exp(B_0 - 0/2)
        double z_riemann = 1.0;   // Euler sum with sigma at the left point
        double mn_exact = 1.0, mn_riemann = 1.0;
        double sup_below = 0.0, sup_above = 0.0;
        for (int i = 1; i <= n_steps; ++i) {
            const double db = sqrt_dt * rng.normal();
            z_riemann += z_exact * db;  // sigma_{t_{i-1}} = Z_{t_{i-1}} for this model
            b += db;
            const double t = static_cast<double>(i) * dt;
            z_exact = std::exp(b - 0.5 * t);
            mn_exact = std::min(mn_exact, z_exact);
            mn_riemann = std::min(mn_riemann, z_riemann);
            if (i % monitor_stride == 0) {
                const int m = i / monitor_stride - 1;
                const double zp = z_exact - 1.0;
                sup_below = std::max(sup_below,
                                     std::fabs(zp - res.below_floor.target[
                                                        static_cast<std::size_t>(m)]));
                sup_above = std::max(sup_above,
                                     std::fabs(zp - res.above_floor.target[
                                                        static_cast<std::size_t>(m)]));
            }
        }
        hit_below[static_cast<std::size_t>(k)] = sup_below < res.below_floor.epsilon ? 1 : 0;
        hit_above[static_cast<std::size_t>(k)] = sup_above < res.above_floor.epsilon ? 1 : 0;
        min_exact[static_cast<std::size_t>(k)] = mn_exact;
        min_riemann[static_cast<std::size_t>(k)] = mn_riemann;
    }

    long nb = 0, na = 0;
    double me = min_exact[0], mr = min_riemann[0];
    for (long k = 0; k < n_trials; ++k) {
        nb += hit_below[static_cast<std::size_t>(k)];
        na += hit_above[static_cast<std::size_t>(k)];
        me = std::min(me, min_exact[static_cast<std::size_t>(k)]);
        mr = std::min(mr, min_riemann[static_cast<std::size_t>(k)]);
    }
    res.below_floor.hits = nb;
    res.above_floor.hits = na;
    res.min_exact_path = me;
    res.min_riemann_path = mr;
    finalize_counts(res.below_floor);
    finalize_counts(res.above_floor);
    return res;
}

}  // namespace bss
