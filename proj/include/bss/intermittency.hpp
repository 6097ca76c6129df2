#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bss/grid.hpp"

namespace bss {

// Intermittency (volatility) model for sigma_t; also reused for the drift
// multiplier process a_t.
//
//   Constant:      sigma_t = value > 0
//   Deterministic: linear interpolation of a (knots, values) table
//   ExpOu:         sigma_t = exp(U_t), dU = reversion (mean_log - U) dt + vol_log dW,
//                  started from the stationary law N(mean_log, vol_log^2/(2 reversion))
class IntermittencyModel {
public:
    enum class Variant { Constant, Deterministic, ExpOu };

    static IntermittencyModel constant(double value);
    static IntermittencyModel deterministic(std::vector<double> knots, std::vector<double> values);
    static IntermittencyModel exp_ou(double reversion, double mean_log, double vol_log);

    Variant variant() const { return variant_; }
    std::string describe() const;

    double constant_value() const;
    double ou_reversion() const;
    double ou_mean_log() const;
    double ou_vol_log() const;
    const std::vector<double>& knots() const;
    const std::vector<double>& table_values() const;

    // Pointwise value for the deterministic variants; InvalidParameter for ExpOu.
    double value(double t) const;

    // sup_t E[sigma_t^2] over [lo, hi] (single stationary moment for ExpOu).
    double second_moment_sup(double lo, double hi) const;

    // Lebesgue measure of {t in [lo, hi] : sigma_t = 0}; 0 a.s. for the
    // stochastic variant (log-normal marginals).
    double zero_set_measure(double lo, double hi) const;

    // Sample the process at the grid points; deterministic given (seed, stream).
    SamplePath sample(const SimGrid& grid, std::uint64_t seed, std::uint64_t stream) const;

private:
    Variant variant_ = Variant::Constant;
    double value_ = 1.0;
    double reversion_ = 0.0, mean_log_ = 0.0, vol_log_ = 0.0;
    std::vector<double> knots_, vals_;
};

}  // namespace bss
