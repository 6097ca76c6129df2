#pragma once

// Reference computations for tests, kept independent of the library's own
// quadrature: Boost double-exponential rules and closed forms.

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bss/rng.hpp"

namespace oracles {

template <class F>
double integrate_finite(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(f, a, b);
}

template <class F>
double integrate_zero_to_inf(F f) {
    boost::math::quadrature::exp_sinh<double> integ;
    return integ.integrate(f);
}

// P(sup_{[0,1]} |W| < a) by the reflection series
// sum_k (-1)^k [Phi((2k+1)a) - Phi((2k-1)a)].
inline double brownian_sup_below(double a) {
    double total = 0.0;
    for (int k = -40; k <= 40; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        total += sign * (bss::normal_cdf((2.0 * k + 1.0) * a) -
                         bss::normal_cdf((2.0 * k - 1.0) * a));
    }
    return total;
}

}  // namespace oracles
