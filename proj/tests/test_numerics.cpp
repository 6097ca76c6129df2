#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bss/errors.hpp"
#include "bss/quadrature.hpp"
#include "bss/rng.hpp"
#include "bss/stats.hpp"
#include "support/oracles.hpp"

using namespace bss;

TEST_CASE("inverse normal cdf round-trips against erfc") {
    const double ps[] = {1e-12, 1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-6};
    for (double p : ps) {
        const double x = inverse_normal_cdf(p);
        CHECK(std::fabs(normal_cdf(x) - p) <= 1e-13 * std::max(1.0, p));
    }
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.5) == 0.0);
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), DomainError);
    CHECK_THROWS_AS(inverse_normal_cdf(1.0), DomainError);
}

TEST_CASE("counter rng is stream-keyed and deterministic") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_equal_other_stream = false;
    for (int i = 0; i < 100; ++i) {
        const auto xa = a.next_u64();
        all_equal = all_equal && (xa == b.next_u64());
        any_equal_other_stream = any_equal_other_stream || (xa == c.next_u64());
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_other_stream);
}

TEST_CASE("counter rng uniforms live strictly inside (0,1) and normals have the right moments") {
    CounterRng rng(123, 1);
    const int n = 200000;
    std::vector<double> zs(n);
    double umin = 1.0, umax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        zs[static_cast<std::size_t>(i)] = inverse_normal_cdf(u);
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    const auto mv = stats::mean_and_variance(zs);
    CHECK(std::fabs(mv.mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(mv.variance - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("adaptive quadrature matches closed forms and boost references") {
    auto sq = [](double x) { return x * x; };
    CHECK(quad::integrate(sq, 0.0, 1.0).resolve("x^2") == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // Integrable endpoint singularity.
    auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK(quad::integrate_power_left(inv_sqrt, 0.0, 1.0, -0.5).resolve("x^-1/2") ==
          doctest::Approx(2.0).epsilon(1e-11));

    // Exponential tail.
    auto e2 = [](double s) { return std::exp(-2.0 * s); };
    CHECK(quad::integrate_tail(e2, 1.0, 1.0).resolve("tail") ==
          doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-11));

    // Kinked integrand with a seeded breakpoint.
    auto kink = [](double x) { return std::fabs(x - 0.3); };
    const double brk[] = {0.3};
    CHECK(quad::integrate(kink, 0.0, 1.0, {}, brk).resolve("kink") ==
          doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));

    // Singular-plus-tail composition against an independent boost reference.
    auto f = [](double s) { return std::exp(-2.0 * s) / std::sqrt(s); };
    const double mine = quad::integrate_power_left(f, 0.0, 4.0, -0.5).resolve("head") +
                        quad::integrate_tail(f, 4.0, 1.0).resolve("tail");
    const double reference = oracles::integrate_zero_to_inf(f);
    CHECK(mine == doctest::Approx(reference).epsilon(1e-10));
    CHECK(mine == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-10));
}

TEST_CASE("wilson interval brackets the estimate and detects zero hits") {
    const auto z = stats::wilson_interval(0, 100000);
    CHECK(z.lo == 0.0);
    CHECK(z.hi > 0.0);
    const auto one = stats::wilson_interval(1, 100000);
    CHECK(one.lo > 0.0);
    const auto mid = stats::wilson_interval(370, 1000);
    CHECK(mid.lo <= 0.37);
    CHECK(mid.hi >= 0.37);
    CHECK_THROWS_AS(stats::wilson_interval(5, 4), InvalidParameter);
}

TEST_CASE("least squares slope recovers an exact line") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0}, ys;
    for (double x : xs) ys.push_back(2.5 * x - 1.0);
    CHECK(stats::least_squares_slope(xs, ys) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("two-sample KS statistic behaves on shifted samples") {
    CounterRng rng(7, 1);
    std::vector<double> a(2000), b(2000), c(2000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        c[i] = rng.normal() + 2.0;
    }
    const double crit = stats::ks_critical_value(a.size(), b.size(), 0.01);
    CHECK(stats::ks_statistic(a, b) < crit);
    CHECK(stats::ks_statistic(a, c) > crit);
    CHECK(crit == doctest::Approx(1.6276 * std::sqrt(2.0 / 2000.0)).epsilon(1e-3));
}

TEST_CASE("reflection series oracle reproduces the known tube probability") {
    CHECK(oracles::brownian_sup_below(1.0) == doctest::Approx(0.370778).epsilon(2e-5));
}
