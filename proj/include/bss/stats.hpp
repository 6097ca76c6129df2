#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace bss::stats {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// 95% Wilson score interval by default (z = Phi^{-1}(0.975)).
Interval wilson_interval(long hits, long n, double z = 1.959963984540054);

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // unbiased (n-1 denominator)
};

MeanVar mean_and_variance(std::span<const double> xs);

// Slope of the least-squares line y = a + b x.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// Asymptotic two-sample KS critical value at level alpha:
// c(alpha) * sqrt((n+m)/(n m)), c(alpha) = sqrt(-log(alpha/2)/2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

}  // namespace bss::stats
