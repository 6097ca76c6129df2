#pragma once

#include <memory>
#include <string>
#include <vector>

namespace bss {

enum class KernelFamily { Gamma, Exponential, Tabulated };

// Memory kernel g on (0, inf). Immutable; expensive derived quantities are
// computed once and shared.
//
// Families:
//   Gamma:       g(t) = t^kappa exp(-rho t), kappa in (-1/2,0) u (0,1/2), rho > 0
//   Exponential: g(t) = exp(-rho t), rho > 0
//   Tabulated:   linear interpolation of (knots, values), zero beyond the table
class Kernel {
public:
    static Kernel gamma(double kappa, double rho);
    static Kernel exponential(double rho);
    static Kernel tabulated(std::vector<double> knots, std::vector<double> values);

    KernelFamily family() const;
    std::string describe() const;

    // Family parameters; throws InvalidParameter when queried on the wrong family.
    double gamma_kappa() const;
    double gamma_rho() const;
    double exponential_rho() const;
    const std::vector<double>& knots() const;
    const std::vector<double>& values() const;

    // g(t); DomainError for t <= 0.
    double operator()(double t) const;

    // p such that g(t) ~ c t^p as t -> 0+ (kappa for Gamma, 0 otherwise).
    double singularity_exponent() const;

    // Right end of the support (last knot for Tabulated, +inf otherwise).
    double support_end() const;

    // Exponential decay scale used for tail substitutions.
    double decay_rate() const;

    // ||g||_2^2 = int_0^inf g^2, closed form where available.
    double l2_norm_sq() const;

    // int_0^a g^2 and int_M^inf g^2.
    double l2_head(double a) const;
    double l2_tail(double M) const;

    // R(t) = int_0^inf g(t+s) g(s) ds; R(0) = ||g||_2^2.
    double autocovariance(double t) const;

    // gap(t) = ||g||_2^2 - R(t), evaluated through the increment-variance
    // identity gap(t) = 1/2 int_0^t g^2 + 1/2 int_0^inf (g(s+t)-g(s))^2 ds,
    // which has no cancellation for small t.
    double increment_gap(double t) const;

    // int_0^eps |g|.
    double abs_integral_head(double eps) const;

private:
    struct Impl;
    explicit Kernel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct RegularityCertificate {
    double alpha = 0.0;
    double C = 0.0;
    std::vector<double> probe_times;
    std::vector<double> gaps;
    double fitted_slope = 0.0;
    bool passed = false;
};

// Numerical certificate for the increment-variance bound gap(t) <= C t^alpha
// on (0, T]: gaps on a log-spaced grid spanning [T/1000, T], alpha from a
// log-log least-squares fit (floored at 1e-3), C = max gap_i / t_i^alpha with
// a 10% margin.
RegularityCertificate certify_regularity(const Kernel& g, double T, int n_probe);

// For each eps, whether int_0^eps |g| exceeds the strict positivity floor 1e-14.
std::vector<bool> nondegeneracy_check(const Kernel& g, const std::vector<double>& epsilons);

// Smallest M with int_M^inf g^2 <= tol^2 (0 when tol^2 >= ||g||_2^2).
double truncation_horizon(const Kernel& g, double tol);

}  // namespace bss
