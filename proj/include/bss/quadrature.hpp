#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "bss/errors.hpp"

namespace bss::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 4000;
};

struct Result {
    double value = 0.0;
    double error_bound = 0.0;
    long evaluations = 0;
    bool converged = false;

    // Value, or NumericalError carrying the achieved estimate and bound.
    double resolve(const char* what) const {
        if (!converged || !std::isfinite(value)) {
            throw NumericalError(std::string(what) + ": quadrature did not converge (estimate " +
                                 std::to_string(value) + ", error bound " +
                                 std::to_string(error_bound) + ")");
        }
        return value;
    }
};

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1] (positive half; node 0 listed once).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F&& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    // fv index: 0..6 -> c - h*x[0..6], 7 -> c, 8..14 -> c + h*x[6..0]
    for (int i = 0; i < 7; ++i) fv[i] = f(c - h * kXgk[i]);
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) fv[8 + i] = f(c + h * kXgk[6 - i]);
    evals += 15;

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 3; ++i) {
        resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fv[7] - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));
    }
    resasc *= h;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    return Panel{a, b, resk * h, err};
}

}  // namespace detail

// Single non-adaptive Gauss-Kronrod panel; near machine precision for
// integrands smooth on [a, b].
template <class F>
double fixed_gk15(F&& f, double a, double b) {
    if (!(b > a)) return 0.0;
    long evals = 0;
    return detail::gk15(f, a, b, evals).value;
}

// Adaptive Gauss-Kronrod on [a, b]; breakpoints (interior, sorted or not) seed
// the initial panel set so kernel knots and kinks land on panel boundaries.
template <class F>
Result integrate(F&& f, double a, double b, Options opt = {},
                 std::span<const double> breakpoints = {}) {
    Result out;
    if (!(b > a)) {
        out.converged = true;
        return out;
    }
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        auto p = detail::gk15(f, edges[i], edges[i + 1], out.evaluations);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int panels = static_cast<int>(heap.size());
    const auto tol = [&](double v) { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(v)); };
    while (total_err > tol(total) && panels < opt.max_panels) {
        detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted at fp resolution
            total_err -= worst.error;
            continue;
        }
        auto l = detail::gk15(f, worst.a, mid, out.evaluations);
        auto r = detail::gk15(f, mid, worst.b, out.evaluations);
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    out.value = total;
    out.error_bound = total_err;
    out.converged = std::isfinite(total) && total_err <= tol(total) * 1.000001;
    // A tiny residual bound on an essentially-zero integral is convergence too.
    if (!out.converged && std::isfinite(total) && total_err < opt.abs_tol) out.converged = true;
    return out;
}

// ∫_a^b f(s) ds where f(s) ~ c (s-a)^p as s -> a+, p > -1. The substitution
// s = a + u^q with q = 2/(1+p) turns the endpoint behaviour into u^1.
template <class F>
Result integrate_power_left(F&& f, double a, double b, double p, Options opt = {}) {
    if (!(b > a)) return Result{0.0, 0.0, 0, true};
    if (!(p > -1.0)) throw DomainError("integrate_power_left: exponent must be > -1");
    if (std::fabs(p) < 1e-12) return integrate(f, a, b, opt);
    const double q = std::clamp(2.0 / (1.0 + p), 1.0, 12.0);
    const double u_hi = std::pow(b - a, 1.0 / q);
    auto g = [&](double u) -> double {
        const double s = a + std::pow(u, q);
        if (!(s > a)) return 0.0;  // underflow guard at the singular endpoint
        return f(s) * q * std::pow(u, q - 1.0);
    };
    return integrate(g, 0.0, u_hi, opt);
}

// ∫_M^inf f(s) ds for f decaying at least like exp(-c s); substitution
// v = exp(-c (s - M)) maps the tail to (0, 1].
template <class F>
Result integrate_tail(F&& f, double M, double decay_c, Options opt = {}) {
    if (!(decay_c > 0.0)) throw DomainError("integrate_tail: decay rate must be positive");
    auto g = [&](double v) -> double {
        if (v < std::numeric_limits<double>::min()) return 0.0;
        const double s = M - std::log(v) / decay_c;
        const double fs = f(s);
        if (fs == 0.0) return 0.0;
        return fs / (decay_c * v);
    };
    return integrate(g, 0.0, 1.0, opt);
}

}  // namespace bss::quad
