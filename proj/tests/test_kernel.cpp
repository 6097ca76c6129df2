#include <doctest.h>

#include <cmath>
#include <vector>

#include "bss/errors.hpp"
#include "bss/kernel.hpp"
#include "bss/quadrature.hpp"
#include "bss/stats.hpp"
#include "support/oracles.hpp"

using namespace bss;

namespace {
const double kGammaQuarterL2 = 0.31332853432887503;   // Gamma(1.5) / 2^1.5
const double kGammaNegQuarterL2 = 1.2533141373155003;  // Gamma(0.5) / 2^0.5
}  // namespace

TEST_CASE("kernel evaluation closed forms") {
    const Kernel g1 = Kernel::gamma(0.25, 1.0);
    CHECK(g1(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const Kernel g2 = Kernel::gamma(-0.25, 1.0);
    CHECK(g2(1e-8) == doctest::Approx(100.0).epsilon(1e-5));

    const Kernel e = Kernel::exponential(2.0);
    CHECK(e(0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(g1(0.0), DomainError);
    CHECK_THROWS_AS(e(-1.0), DomainError);
}

TEST_CASE("gamma kernel parameter invariants") {
    CHECK_THROWS_AS(Kernel::gamma(0.6, 1.0), InvalidParameter);
    CHECK_THROWS_AS(Kernel::gamma(0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(Kernel::gamma(-0.5, 1.0), InvalidParameter);
    CHECK_THROWS_AS(Kernel::gamma(0.25, 0.0), InvalidParameter);
    CHECK_THROWS_AS(Kernel::exponential(-1.0), InvalidParameter);
}

TEST_CASE("tabulated kernel construction and evaluation") {
    CHECK_THROWS_AS(Kernel::tabulated({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(Kernel::tabulated({-0.5, 1.0}, {1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(Kernel::tabulated({0.0}, {1.0}), InvalidParameter);

    const Kernel k = Kernel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(k(0.5) == doctest::Approx(0.5));
    CHECK(k(1.5) == doctest::Approx(0.5));
    CHECK(k(3.0) == 0.0);  // zero beyond the last knot
    CHECK(k.support_end() == 2.0);
}

TEST_CASE("gamma divergence scaling at the origin") {
    const Kernel g = Kernel::gamma(-0.25, 1.0);
    for (double t : {1e-6, 1e-8}) {
        CHECK(g(t) * std::pow(t, 0.25) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("l2 norms: closed forms vs library quadrature vs boost") {
    const Kernel e = Kernel::exponential(1.0);
    CHECK(e.l2_norm_sq() == doctest::Approx(0.5).epsilon(1e-12));

    const Kernel gp = Kernel::gamma(0.25, 1.0);
    const Kernel gm = Kernel::gamma(-0.25, 1.0);
    CHECK(gp.l2_norm_sq() == doctest::Approx(kGammaQuarterL2).epsilon(1e-12));
    CHECK(gm.l2_norm_sq() == doctest::Approx(kGammaNegQuarterL2).epsilon(1e-12));

    // The closed forms must agree with quadrature to 1e-8 relative; check both
    // the library integrator and the independent boost rule.
    for (const Kernel* k : {&gp, &gm, &e}) {
        auto f = [&](double s) {
            const double v = (*k)(s);
            return v * v;
        };
        const double mine =
            quad::integrate_power_left(f, 0.0, 6.0, 2.0 * k->singularity_exponent())
                .resolve("head") +
            quad::integrate_tail(f, 6.0, 1.0).resolve("tail");
        CHECK(mine == doctest::Approx(k->l2_norm_sq()).epsilon(1e-9));
        CHECK(oracles::integrate_zero_to_inf(f) ==
              doctest::Approx(k->l2_norm_sq()).epsilon(1e-9));
    }

    // Tabulated norms are exact piecewise integrals.
    const Kernel hat = Kernel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(hat.l2_norm_sq() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("autocovariance values and the R(0) identity") {
    const Kernel e = Kernel::exponential(1.0);
    CHECK(e.autocovariance(1.0) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));

    for (const Kernel& k : {Kernel::gamma(0.25, 1.0), Kernel::gamma(-0.25, 1.0),
                            Kernel::exponential(0.7),
                            Kernel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0})}) {
        CHECK(k.autocovariance(0.0) ==
              doctest::Approx(k.l2_norm_sq()).epsilon(1e-10));
    }

    // Reproducibility and agreement with the independent rule.
    const Kernel gp = Kernel::gamma(0.25, 1.0);
    const double r1 = gp.autocovariance(0.5);
    const double r2 = gp.autocovariance(0.5);
    CHECK(r1 == r2);
    auto prod = [&](double s) { return gp(s + 0.5) * gp(s); };
    CHECK(r1 == doctest::Approx(oracles::integrate_zero_to_inf(prod)).epsilon(1e-8));

    const Kernel gm = Kernel::gamma(-0.25, 1.0);
    auto prodm = [&](double s) { return gm(s + 0.3) * gm(s); };
    CHECK(gm.autocovariance(0.3) ==
          doctest::Approx(oracles::integrate_zero_to_inf(prodm)).epsilon(1e-8));

    const Kernel hat = Kernel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    auto prodh = [&](double s) { return hat(s + 0.5) * hat(s); };
    const double ref = oracles::integrate_finite(prodh, 1e-12, 0.5) +
                       oracles::integrate_finite(prodh, 0.5, 1.0) +
                       oracles::integrate_finite(prodh, 1.0, 1.5);
    CHECK(hat.autocovariance(0.5) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(hat.autocovariance(2.5) == 0.0);
}

TEST_CASE("increment gap matches direct subtraction away from zero") {
    for (const Kernel& k : {Kernel::gamma(0.25, 1.0), Kernel::gamma(-0.25, 1.0),
                            Kernel::exponential(1.0)}) {
        for (double t : {0.05, 0.2, 1.0}) {
            const double direct = k.l2_norm_sq() - k.autocovariance(t);
            CHECK(k.increment_gap(t) ==
                  doctest::Approx(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("gap is nonnegative and nondecreasing on a probe grid") {
    for (const Kernel& k : {Kernel::gamma(0.25, 1.0), Kernel::gamma(-0.25, 1.0),
                            Kernel::exponential(1.0)}) {
        double prev = -1e-10;
        for (double t : {1e-4, 1e-3, 1e-2, 0.1, 0.3, 1.0, 2.0}) {
            const double direct = k.l2_norm_sq() - k.autocovariance(t);
            CHECK(direct >= -1e-10 * k.l2_norm_sq());
            const double gap = k.increment_gap(t);
            CHECK(gap >= prev - 1e-10);
            prev = gap;
        }
    }
}

TEST_CASE("regularity certificates recover the gap scaling exponent") {
    // Exponential: gap(t) = (1 - e^{-t})/2, slope 1 on small probes.
    const auto ce = certify_regularity(Kernel::exponential(1.0), 0.1, 16);
    CHECK(ce.passed);
    CHECK(ce.fitted_slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK(ce.C <= 0.5 * 1.1 + 0.05);
    for (std::size_t i = 0; i < ce.gaps.size(); ++i) {
        CHECK(ce.gaps[i] <= ce.C * std::pow(ce.probe_times[i], ce.alpha) * (1.0 + 1e-12));
    }

    // Gamma: slope 2 kappa + 1 within +-0.1 over probes in [1e-4, 1e-1].
    const auto cp = certify_regularity(Kernel::gamma(0.25, 1.0), 0.1, 16);
    CHECK(cp.passed);
    CHECK(std::fabs(cp.fitted_slope - 1.5) <= 0.1);

    const auto cm = certify_regularity(Kernel::gamma(-0.25, 1.0), 0.1, 16);
    CHECK(cm.passed);
    CHECK(std::fabs(cm.fitted_slope - 0.5) <= 0.1);

    CHECK_THROWS_AS(certify_regularity(Kernel::exponential(1.0), 0.1, 4), InvalidParameter);
    CHECK_THROWS_AS(certify_regularity(Kernel::exponential(1.0), -1.0, 16), InvalidParameter);
}

TEST_CASE("nondegeneracy check distinguishes flat-zero heads") {
    const auto yes = nondegeneracy_check(Kernel::gamma(0.4, 2.0), {0.01});
    CHECK(yes[0]);
    const auto fast = nondegeneracy_check(Kernel::exponential(5.0), {1e-4});
    CHECK(fast[0]);

    const Kernel flat0 = Kernel::tabulated({0.0, 0.1, 0.2}, {0.0, 0.0, 1.0});
    const auto flags = nondegeneracy_check(flat0, {0.05, 0.15});
    CHECK_FALSE(flags[0]);
    CHECK(flags[1]);
    CHECK_THROWS_AS(nondegeneracy_check(flat0, {0.0}), InvalidParameter);
}

TEST_CASE("truncation horizon solves the tail-mass equation") {
    const Kernel e = Kernel::exponential(1.0);
    CHECK(truncation_horizon(e, 1e-6) == doctest::Approx(13.468937).epsilon(1e-5));
    CHECK(truncation_horizon(e, 1.0) == 0.0);  // tol^2 >= ||g||^2

    const Kernel gp = Kernel::gamma(0.25, 1.0);
    const double M = truncation_horizon(gp, 1e-6);
    CHECK(gp.l2_tail(M) <= 1e-12 * (1.0 + 1e-6));
    CHECK(gp.l2_tail(0.999 * M) > 1e-12);
    // Independent check of the tail mass at the solved horizon.
    auto sq = [&](double s) { return gp(s + M) * gp(s + M); };
    CHECK(oracles::integrate_zero_to_inf(sq) == doctest::Approx(1e-12).epsilon(1e-3));

    // Monotone nonincreasing in tol.
    double prev = 0.0;
    for (double tol : {1e-2, 1e-4, 1e-6}) {
        const double m = truncation_horizon(gp, tol);
        CHECK(m >= prev);
        prev = m;
    }

    const Kernel hat = Kernel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(truncation_horizon(hat, 1e-8) <= 2.0);
    CHECK(hat.l2_tail(truncation_horizon(hat, 1e-8)) <= 1e-16 * 1.0001);
}
