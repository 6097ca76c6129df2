#include "bss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bss/errors.hpp"

namespace bss::stats {

Interval wilson_interval(long hits, long n, double z) {
    if (n <= 0 || hits < 0 || hits > n) {
        throw InvalidParameter("wilson_interval: need 0 <= hits <= n, n > 0");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    Interval out{center - half, center + half};
    if (hits == 0) out.lo = 0.0;
    if (hits == n) out.hi = 1.0;
    out.lo = std::max(0.0, out.lo);
    out.hi = std::min(1.0, out.hi);
    return out;
}

MeanVar mean_and_variance(std::span<const double> xs) {
    MeanVar out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        ss += d * d;
    }
    out.variance = ss / static_cast<double>(n - 1);
    return out;
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw InvalidParameter("least_squares_slope: need two equally-sized samples, n >= 2");
    }
    const auto mx = mean_and_variance(xs).mean;
    const auto my = mean_and_variance(ys).mean;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) throw InvalidParameter("least_squares_slope: degenerate abscissae");
    return sxy / sxx;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("ks_statistic: empty sample");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("ks_critical_value: alpha in (0,1)");
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace bss::stats
