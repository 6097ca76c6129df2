#include <doctest.h>

#include <cmath>

#include "bss/errors.hpp"
#include "bss/model.hpp"

using namespace bss;

namespace {
BssModel standard_model(double kappa = 0.25, double beta = 0.0) {
    return BssModel(Kernel::gamma(kappa, 1.0), IntermittencyModel::exp_ou(1.0, 0.0, 0.5), 1.0,
                    0.0, beta);
}
}  // namespace

TEST_CASE("standard gamma/exp-OU model passes all conditions") {
    const auto report = validate_model(standard_model());
    CHECK(report.overall);
    CHECK(report.checks.size() == 6);
    for (const auto& c : report.checks) CHECK(c.passed);
    CHECK(report.certificate.passed);
    // (ii) closed-form stationary second moment exp(2m + v^2/lambda).
    CHECK(report.checks[1].value == doctest::Approx(std::exp(0.25)).epsilon(1e-12));

    // Deterministic and side-effect free: identical on a second call.
    const auto again = validate_model(standard_model());
    CHECK(again.overall == report.overall);
    CHECK(again.certificate.alpha == report.certificate.alpha);
    CHECK(again.checks[1].value == report.checks[1].value);
}

TEST_CASE("invalid kernel parameters surface as InvalidParameter") {
    CHECK_THROWS_WITH_AS(Kernel::gamma(0.6, 1.0), doctest::Contains("kappa"), InvalidParameter);
}

TEST_CASE("zero plateau in a deterministic sigma fails condition (v)") {
    const auto sigma = IntermittencyModel::deterministic({-1.0, 0.2, 0.4, 1.0},
                                                         {1.0, 0.0, 0.0, 1.0});
    const BssModel m(Kernel::exponential(1.0), sigma, 1.0, 0.0, 0.0, {},
                     /*truncation_M=*/14.0);
    const auto report = validate_model(m);
    CHECK_FALSE(report.overall);
    CHECK_FALSE(report.checks[4].passed);  // (v)
    CHECK(report.checks[4].value == doctest::Approx(0.2).epsilon(1e-12));
    // A plateau strictly in the past does not violate (v) on [0, T].
    const auto past_only = IntermittencyModel::deterministic({-1.0, -0.5, 0.0, 1.0},
                                                             {0.0, 0.0, 1.0, 1.0});
    const BssModel m2(Kernel::exponential(1.0), past_only, 1.0, 0.0, 0.0, {},
                      /*truncation_M=*/14.0);
    CHECK(validate_model(m2).checks[4].passed);
}

TEST_CASE("drift integrability is checked when a drift term is present") {
    DriftSpec drift;
    drift.q = Kernel::exponential(2.0);
    const BssModel m(Kernel::gamma(0.25, 1.0), IntermittencyModel::constant(1.0), 1.0, 0.0, 0.0,
                     drift);
    const auto report = validate_model(m);
    CHECK(report.checks[0].applicable);
    CHECK(report.checks[0].passed);
    // int_0^{T+M} e^{-2s} ds ~ 1/2 for large M.
    CHECK(report.checks[0].value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(report.overall);

    const auto vacuous = validate_model(standard_model());
    CHECK_FALSE(vacuous.checks[0].applicable);
    CHECK(vacuous.checks[0].passed);
}

TEST_CASE("model invariants: beta range and truncation horizon") {
    CHECK_THROWS_WITH_AS(BssModel(Kernel::exponential(1.0), IntermittencyModel::constant(1.0),
                                  1.0, 0.0, 1.0),
                         doctest::Contains("beta"), InvalidParameter);
    CHECK_THROWS_WITH_AS(BssModel(Kernel::exponential(1.0), IntermittencyModel::constant(1.0),
                                  1.0, 0.0, 0.0, {}, /*truncation_M=*/1.0),
                         doctest::Contains("truncation"), InvalidParameter);
    // Auto-resolved horizon satisfies the invariant.
    const auto m = standard_model();
    CHECK(m.truncation_M() >= truncation_horizon(m.g(), m.truncation_tol()) * (1.0 - 1e-9));
    // Drift multiplier without a kernel is rejected.
    DriftSpec bad;
    bad.a = IntermittencyModel::constant(1.0);
    CHECK_THROWS_AS(BssModel(Kernel::exponential(1.0), IntermittencyModel::constant(1.0), 1.0,
                             0.0, 0.0, bad),
                    InvalidParameter);
}

TEST_CASE("intermittency moments and positivity helpers") {
    const auto c = IntermittencyModel::constant(2.0);
    CHECK(c.second_moment_sup(-5.0, 1.0) == 4.0);
    CHECK(c.zero_set_measure(0.0, 1.0) == 0.0);

    const auto det = IntermittencyModel::deterministic({0.0, 1.0}, {1.0, 3.0});
    CHECK(det.second_moment_sup(0.0, 1.0) == doctest::Approx(9.0));
    CHECK(det.value(0.5) == doctest::Approx(2.0));
    CHECK_THROWS_AS(det.value(2.0), DomainError);

    const auto ou = IntermittencyModel::exp_ou(2.0, 0.1, 0.5);
    CHECK(ou.second_moment_sup(-1.0, 1.0) ==
          doctest::Approx(std::exp(0.2 + 0.25 / 2.0)).epsilon(1e-12));
    CHECK(ou.zero_set_measure(0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(IntermittencyModel::constant(0.0), InvalidParameter);
    CHECK_THROWS_AS(IntermittencyModel::exp_ou(-1.0, 0.0, 0.5), InvalidParameter);
}
