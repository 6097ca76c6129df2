#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bss/intermittency.hpp"
#include "bss/kernel.hpp"

namespace bss {

// Optional drift term int q(t-s) a_s ds. A missing multiplier process means
// a == 1.
struct DriftSpec {
    std::optional<Kernel> q;
    std::optional<IntermittencyModel> a;

    bool present() const { return q.has_value(); }
    const IntermittencyModel& multiplier() const;
};

// Full process specification
//   X_t = mu + int_{-inf}^t g(t-s) sigma_s dW_s + int_{-inf}^t q(t-s) a_s ds,
//   W = beta Wbar + sqrt(1-beta^2) Wbar_perp.
// The simulator works with the equivalent split Z = Y + int g sigma~ dB where
// B = Wbar_perp is standard, sigma~ = sqrt(1-beta^2) sigma, and Y carries mu,
// the beta Wbar integral and the drift.
class BssModel {
public:
    BssModel(Kernel g, IntermittencyModel sigma, double horizon_T, double mu = 0.0,
             double beta = 0.0, DriftSpec drift = {},
             std::optional<double> truncation_M = std::nullopt, double truncation_tol = 1e-6);

    const Kernel& g() const { return g_; }
    const IntermittencyModel& sigma() const { return sigma_; }
    const DriftSpec& drift() const { return drift_; }
    double mu() const { return mu_; }
    double beta() const { return beta_; }
    double horizon() const { return horizon_; }
    double truncation_M() const { return truncation_M_; }
    double truncation_tol() const { return truncation_tol_; }

    // sqrt(1 - beta^2), the scale of the independent driver component.
    double driver_scale() const;

    // Cheap structural checks (beta range, truncation horizon); throws
    // InvalidParameter naming the violated invariant.
    void check_invariants() const;

private:
    Kernel g_;
    IntermittencyModel sigma_;
    DriftSpec drift_;
    double mu_;
    double beta_;
    double horizon_;
    double truncation_M_;
    double truncation_tol_;
};

struct ConditionCheck {
    std::string condition;  // "i" .. "vi"
    bool applicable = true;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionCheck> checks;
    RegularityCertificate certificate;
    bool overall = false;
};

// Numerical rendering of conditions (i)-(vi):
//   (i)   drift kernel absolutely integrable on (0, T+M] (vacuous without drift)
//   (ii)  sup_t E[sigma_t^2] finite, reported with its value
//   (iii) regularity certificate for g
//   (iv)  beta in (-1, 1); independence/adaptedness holds by construction
//         for the built-in families
//   (v)   lambda{t in [0,T] : sigma_t = 0} = 0
//   (vi)  int_0^eps |g| > 0 at eps in {1e-4, 1e-2, 1e-1}
ConditionReport validate_model(const BssModel& model);

}  // namespace bss
