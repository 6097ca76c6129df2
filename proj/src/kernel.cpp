#include "bss/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "bss/errors.hpp"
#include "bss/quadrature.hpp"
#include "bss/stats.hpp"

namespace bss {

namespace {

constexpr double kPositivityFloor = 1e-14;  // condition (vi) strict-positivity floor
constexpr double kCertMargin = 0.10;        // safety margin on the certificate constant C

// Exact integral of the square of a linear segment l with l(x0)=v0, l(x1)=v1.
double seg_l2(double x0, double x1, double v0, double v1) {
    return (x1 - x0) * ((v0 * v0 + v0 * v1 + v1 * v1) / 3.0);
}

// Exact integral of |l| over [x0, x1] for the same segment, splitting at a sign change.
double seg_abs(double x0, double x1, double v0, double v1) {
    if (v0 == 0.0 && v1 == 0.0) return 0.0;
    if (v0 * v1 >= 0.0) return 0.5 * (x1 - x0) * (std::fabs(v0) + std::fabs(v1));
    const double xc = x0 + (x1 - x0) * v0 / (v0 - v1);
    return 0.5 * (xc - x0) * std::fabs(v0) + 0.5 * (x1 - xc) * std::fabs(v1);
}

}  // namespace

struct Kernel::Impl {
    KernelFamily family;
    double kappa = 0.0;
    double rho = 0.0;
    std::vector<double> knots;
    std::vector<double> vals;
    double l2 = 0.0;

    double eval_raw(double t) const {
        switch (family) {
            case KernelFamily::Gamma:
                return std::pow(t, kappa) * std::exp(-rho * t);
            case KernelFamily::Exponential:
                return std::exp(-rho * t);
            case KernelFamily::Tabulated: {
                if (t < knots.front() || t > knots.back()) return 0.0;
                const auto it = std::upper_bound(knots.begin(), knots.end(), t);
                const std::size_t hi = std::min<std::size_t>(
                    knots.size() - 1, static_cast<std::size_t>(it - knots.begin()));
                const std::size_t lo = hi - (hi > 0 ? 1 : 0);
                if (hi == lo) return vals[lo];
                const double w = (t - knots[lo]) / (knots[hi] - knots[lo]);
                return vals[lo] + w * (vals[hi] - vals[lo]);
            }
        }
        return 0.0;
    }
};

Kernel Kernel::gamma(double kappa, double rho) {
    const bool kappa_ok = std::isfinite(kappa) && kappa > -0.5 && kappa < 0.5 && kappa != 0.0;
    if (!kappa_ok) {
        throw InvalidParameter("gamma kernel: kappa must lie in (-1/2,0) u (0,1/2), got " +
                               std::to_string(kappa));
    }
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw InvalidParameter("gamma kernel: rho must be positive");
    }
    auto impl = std::make_shared<Impl>();
    impl->family = KernelFamily::Gamma;
    impl->kappa = kappa;
    impl->rho = rho;
    impl->l2 = std::tgamma(2.0 * kappa + 1.0) / std::pow(2.0 * rho, 2.0 * kappa + 1.0);
    return Kernel(std::move(impl));
}

Kernel Kernel::exponential(double rho) {
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw InvalidParameter("exponential kernel: rho must be positive");
    }
    auto impl = std::make_shared<Impl>();
    impl->family = KernelFamily::Exponential;
    impl->rho = rho;
    impl->l2 = 1.0 / (2.0 * rho);
    return Kernel(std::move(impl));
}

Kernel Kernel::tabulated(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2) {
        throw InvalidParameter("tabulated kernel: need matching knots/values, at least 2 points");
    }
    if (!(knots.front() >= 0.0)) {
        throw InvalidParameter("tabulated kernel: knots must start at >= 0");
    }
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i] < knots[i + 1])) {
            throw InvalidParameter("tabulated kernel: knots must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidParameter("tabulated kernel: values must be finite");
    }
    auto impl = std::make_shared<Impl>();
    impl->family = KernelFamily::Tabulated;
    impl->knots = std::move(knots);
    impl->vals = std::move(values);
    double l2 = 0.0;
    for (std::size_t i = 0; i + 1 < impl->knots.size(); ++i) {
        l2 += seg_l2(impl->knots[i], impl->knots[i + 1], impl->vals[i], impl->vals[i + 1]);
    }
    impl->l2 = l2;
    return Kernel(std::move(impl));
}

KernelFamily Kernel::family() const { return impl_->family; }

std::string Kernel::describe() const {
    std::ostringstream os;
    switch (impl_->family) {
        case KernelFamily::Gamma:
            os << "gamma(kappa=" << impl_->kappa << ", rho=" << impl_->rho << ")";
            break;
        case KernelFamily::Exponential:
            os << "exponential(rho=" << impl_->rho << ")";
            break;
        case KernelFamily::Tabulated:
            os << "tabulated(" << impl_->knots.size() << " knots on [" << impl_->knots.front()
               << ", " << impl_->knots.back() << "])";
            break;
    }
    return os.str();
}

double Kernel::gamma_kappa() const {
    if (impl_->family != KernelFamily::Gamma) throw InvalidParameter("not a gamma kernel");
    return impl_->kappa;
}
double Kernel::gamma_rho() const {
    if (impl_->family != KernelFamily::Gamma) throw InvalidParameter("not a gamma kernel");
    return impl_->rho;
}
double Kernel::exponential_rho() const {
    if (impl_->family != KernelFamily::Exponential)
        throw InvalidParameter("not an exponential kernel");
    return impl_->rho;
}
const std::vector<double>& Kernel::knots() const {
    if (impl_->family != KernelFamily::Tabulated) throw InvalidParameter("not a tabulated kernel");
    return impl_->knots;
}
const std::vector<double>& Kernel::values() const {
    if (impl_->family != KernelFamily::Tabulated) throw InvalidParameter("not a tabulated kernel");
    return impl_->vals;
}

double Kernel::operator()(double t) const {
    if (!(t > 0.0)) {
        throw DomainError("kernel defined on (0,inf) only, got t = " + std::to_string(t));
    }
    return impl_->eval_raw(t);
}

double Kernel::singularity_exponent() const {
    return impl_->family == KernelFamily::Gamma ? impl_->kappa : 0.0;
}

double Kernel::support_end() const {
    return impl_->family == KernelFamily::Tabulated
               ? impl_->knots.back()
               : std::numeric_limits<double>::infinity();
}

double Kernel::decay_rate() const {
    return impl_->family == KernelFamily::Tabulated ? 1.0 : impl_->rho;
}

double Kernel::l2_norm_sq() const { return impl_->l2; }

double Kernel::l2_head(double a) const {
    if (!(a >= 0.0)) throw DomainError("l2_head: a must be >= 0");
    if (a == 0.0) return 0.0;
    switch (impl_->family) {
        case KernelFamily::Gamma: {
            const double p = 2.0 * impl_->kappa + 1.0;
            return boost::math::tgamma_lower(p, 2.0 * impl_->rho * a) /
                   std::pow(2.0 * impl_->rho, p);
        }
        case KernelFamily::Exponential:
            return (1.0 - std::exp(-2.0 * impl_->rho * a)) / (2.0 * impl_->rho);
        case KernelFamily::Tabulated: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < impl_->knots.size(); ++i) {
                const double x0 = impl_->knots[i], x1 = impl_->knots[i + 1];
                if (x0 >= a) break;
                if (x1 <= a) {
                    acc += seg_l2(x0, x1, impl_->vals[i], impl_->vals[i + 1]);
                } else {
                    acc += seg_l2(x0, a, impl_->vals[i], impl_->eval_raw(a));
                }
            }
            return acc;
        }
    }
    return 0.0;
}

double Kernel::l2_tail(double M) const {
    if (!(M >= 0.0)) throw DomainError("l2_tail: M must be >= 0");
    switch (impl_->family) {
        case KernelFamily::Gamma: {
            const double p = 2.0 * impl_->kappa + 1.0;
            if (M == 0.0) return impl_->l2;
            return boost::math::tgamma(p, 2.0 * impl_->rho * M) / std::pow(2.0 * impl_->rho, p);
        }
        case KernelFamily::Exponential:
            return std::exp(-2.0 * impl_->rho * M) / (2.0 * impl_->rho);
        case KernelFamily::Tabulated:
            return std::max(0.0, impl_->l2 - l2_head(std::min(M, impl_->knots.back())));
    }
    return 0.0;
}

double Kernel::autocovariance(double t) const {
    if (!(t >= 0.0)) throw DomainError("autocovariance: t must be >= 0");
    if (t == 0.0) return impl_->l2;
    switch (impl_->family) {
        case KernelFamily::Exponential:
            return std::exp(-impl_->rho * t) / (2.0 * impl_->rho);
        case KernelFamily::Gamma: {
            const double kap = impl_->kappa, rho = impl_->rho;
            auto f = [&](double s) { return impl_->eval_raw(t + s) * impl_->eval_raw(s); };
            quad::Options opt{1e-16, 1e-11, 4000};
            const double S = std::max(2.0 * t, 8.0 / rho);
            const double bulk =
                quad::integrate_power_left(f, 0.0, S, kap, opt).resolve("autocovariance bulk");
            const double tail =
                quad::integrate_tail(f, S, rho, opt).resolve("autocovariance tail");
            return bulk + tail;
        }
        case KernelFamily::Tabulated: {
            const double a0 = impl_->knots.front();
            const double a1 = impl_->knots.back() - t;
            if (a1 <= a0) return 0.0;
            std::vector<double> brk;
            for (double k : impl_->knots) {
                brk.push_back(k);
                brk.push_back(k - t);
            }
            auto f = [&](double s) { return impl_->eval_raw(t + s) * impl_->eval_raw(s); };
            return quad::integrate(f, a0, a1, quad::Options{1e-15, 1e-12, 2000}, brk)
                .resolve("autocovariance tabulated");
        }
    }
    return 0.0;
}

double Kernel::increment_gap(double t) const {
    if (!(t >= 0.0)) throw DomainError("increment_gap: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double head = l2_head(t);
    switch (impl_->family) {
        case KernelFamily::Exponential:
            return (1.0 - std::exp(-impl_->rho * t)) / (2.0 * impl_->rho);
        case KernelFamily::Gamma: {
            const double kap = impl_->kappa, rho = impl_->rho;
            auto f = [&](double s) {
                const double d = impl_->eval_raw(s + t) - impl_->eval_raw(s);
                return d * d;
            };
            quad::Options opt{1e-20, 5e-11, 4000};
            const double p = std::min(2.0 * kap, 0.0);
            const double S = std::max(2.0 * t, 8.0 / rho);
            const double bulk =
                quad::integrate_power_left(f, 0.0, S, p, opt).resolve("increment_gap bulk");
            const double tail = quad::integrate_tail(f, S, rho, opt).resolve("increment_gap tail");
            return 0.5 * head + 0.5 * (bulk + tail);
        }
        case KernelFamily::Tabulated: {
            const double a0 = impl_->knots.front();
            const double a1 = impl_->knots.back();
            std::vector<double> brk;
            for (double k : impl_->knots) {
                brk.push_back(k);
                brk.push_back(k - t);
            }
            auto f = [&](double s) {
                const double right = (s + t <= a1) ? impl_->eval_raw(s + t) : 0.0;
                const double d = right - impl_->eval_raw(s);
                return d * d;
            };
            const double diff =
                quad::integrate(f, a0, a1, quad::Options{1e-15, 1e-12, 2000}, brk)
                    .resolve("increment_gap tabulated");
            return 0.5 * head + 0.5 * diff;
        }
    }
    return 0.0;
}

double Kernel::abs_integral_head(double eps) const {
    if (!(eps > 0.0)) throw DomainError("abs_integral_head: eps must be > 0");
    switch (impl_->family) {
        case KernelFamily::Gamma: {
            const double p = impl_->kappa + 1.0;
            return boost::math::tgamma_lower(p, impl_->rho * eps) / std::pow(impl_->rho, p);
        }
        case KernelFamily::Exponential:
            return (1.0 - std::exp(-impl_->rho * eps)) / impl_->rho;
        case KernelFamily::Tabulated: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < impl_->knots.size(); ++i) {
                const double x0 = impl_->knots[i], x1 = impl_->knots[i + 1];
                if (x0 >= eps) break;
                if (x1 <= eps) {
                    acc += seg_abs(x0, x1, impl_->vals[i], impl_->vals[i + 1]);
                } else {
                    acc += seg_abs(x0, eps, impl_->vals[i], impl_->eval_raw(eps));
                }
            }
            return acc;
        }
    }
    return 0.0;
}

RegularityCertificate certify_regularity(const Kernel& g, double T, int n_probe) {
    if (!(T > 0.0)) throw InvalidParameter("certify_regularity: T must be positive");
    if (n_probe < 8) throw InvalidParameter("certify_regularity: need n_probe >= 8");

    RegularityCertificate cert;
    cert.probe_times.reserve(n_probe);
    cert.gaps.reserve(n_probe);
    const double decades = 3.0;  // probe grid spans [T/1000, T]
    for (int i = 0; i < n_probe; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n_probe - 1);
        cert.probe_times.push_back(T * std::pow(10.0, -decades * (1.0 - frac)));
    }
    const double scale = g.l2_norm_sq();
    std::vector<double> lx, ly;
    bool all_positive = true;
    for (double t : cert.probe_times) {
        const double gap = g.increment_gap(t);
        if (!std::isfinite(gap) || gap < -1e-9 * scale) {
            throw NumericalError("certify_regularity: inconsistent gap " + std::to_string(gap) +
                                 " at t = " + std::to_string(t));
        }
        cert.gaps.push_back(gap);
        if (gap > 0.0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(gap));
        } else {
            all_positive = false;
        }
    }
    if (lx.size() >= 2) {
        cert.fitted_slope = stats::least_squares_slope(lx, ly);
    }
    cert.alpha = std::max(cert.fitted_slope, 1e-3);
    double c_needed = 0.0;
    for (std::size_t i = 0; i < cert.gaps.size(); ++i) {
        c_needed = std::max(c_needed, cert.gaps[i] / std::pow(cert.probe_times[i], cert.alpha));
    }
    cert.C = c_needed * (1.0 + kCertMargin);
    cert.passed = all_positive && cert.fitted_slope > 0.0 && std::isfinite(cert.C);
    return cert;
}

std::vector<bool> nondegeneracy_check(const Kernel& g, const std::vector<double>& epsilons) {
    std::vector<bool> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) {
        if (!(eps > 0.0)) throw InvalidParameter("nondegeneracy_check: epsilons must be positive");
        out.push_back(g.abs_integral_head(eps) > kPositivityFloor);
    }
    return out;
}

double truncation_horizon(const Kernel& g, double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("truncation_horizon: tol must be positive");
    const double target = tol * tol;
    if (target >= g.l2_norm_sq()) return 0.0;
    if (g.family() == KernelFamily::Exponential) {
        const double rho = g.exponential_rho();
        return std::max(0.0, -std::log(2.0 * rho * target) / (2.0 * rho));
    }
    // Bracket then bisect the decreasing tail mass.
    double lo = 0.0;
    double hi = (g.family() == KernelFamily::Tabulated) ? g.support_end() : 1.0 / g.decay_rate();
    while (g.l2_tail(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw NumericalError("truncation_horizon: no finite horizon found");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g.l2_tail(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace bss
