#include "bss/intermittency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bss/errors.hpp"
#include "bss/rng.hpp"

namespace bss {

IntermittencyModel IntermittencyModel::constant(double value) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw InvalidParameter("constant intermittency: value must be positive");
    }
    IntermittencyModel m;
    m.variant_ = Variant::Constant;
    m.value_ = value;
    return m;
}

IntermittencyModel IntermittencyModel::deterministic(std::vector<double> knots,
                                                     std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2) {
        throw InvalidParameter("deterministic intermittency: need matching knots/values, >= 2");
    }
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i] < knots[i + 1])) {
            throw InvalidParameter("deterministic intermittency: knots must be increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvalidParameter("deterministic intermittency: values must be finite and >= 0");
        }
    }
    IntermittencyModel m;
    m.variant_ = Variant::Deterministic;
    m.knots_ = std::move(knots);
    m.vals_ = std::move(values);
    return m;
}

IntermittencyModel IntermittencyModel::exp_ou(double reversion, double mean_log, double vol_log) {
    if (!(std::isfinite(reversion) && reversion > 0.0)) {
        throw InvalidParameter("exp-OU intermittency: reversion must be positive");
    }
    if (!(std::isfinite(vol_log) && vol_log >= 0.0)) {
        throw InvalidParameter("exp-OU intermittency: vol_log must be >= 0");
    }
    if (!std::isfinite(mean_log)) {
        throw InvalidParameter("exp-OU intermittency: mean_log must be finite");
    }
    IntermittencyModel m;
    m.variant_ = Variant::ExpOu;
    m.reversion_ = reversion;
    m.mean_log_ = mean_log;
    m.vol_log_ = vol_log;
    return m;
}

std::string IntermittencyModel::describe() const {
    std::ostringstream os;
    switch (variant_) {
        case Variant::Constant:
            os << "constant(" << value_ << ")";
            break;
        case Variant::Deterministic:
            os << "deterministic(" << knots_.size() << " knots)";
            break;
        case Variant::ExpOu:
            os << "exp_ou(reversion=" << reversion_ << ", mean_log=" << mean_log_
               << ", vol_log=" << vol_log_ << ")";
            break;
    }
    return os.str();
}

double IntermittencyModel::constant_value() const {
    if (variant_ != Variant::Constant) throw InvalidParameter("not a constant intermittency");
    return value_;
}
double IntermittencyModel::ou_reversion() const {
    if (variant_ != Variant::ExpOu) throw InvalidParameter("not an exp-OU intermittency");
    return reversion_;
}
double IntermittencyModel::ou_mean_log() const {
    if (variant_ != Variant::ExpOu) throw InvalidParameter("not an exp-OU intermittency");
    return mean_log_;
}
double IntermittencyModel::ou_vol_log() const {
    if (variant_ != Variant::ExpOu) throw InvalidParameter("not an exp-OU intermittency");
    return vol_log_;
}
const std::vector<double>& IntermittencyModel::knots() const {
    if (variant_ != Variant::Deterministic) throw InvalidParameter("not a deterministic table");
    return knots_;
}
const std::vector<double>& IntermittencyModel::table_values() const {
    if (variant_ != Variant::Deterministic) throw InvalidParameter("not a deterministic table");
    return vals_;
}

double IntermittencyModel::value(double t) const {
    switch (variant_) {
        case Variant::Constant:
            return value_;
        case Variant::Deterministic: {
            if (t < knots_.front() - 1e-12 || t > knots_.back() + 1e-12) {
                throw DomainError("deterministic intermittency: t outside table domain");
            }
            const double tc = std::clamp(t, knots_.front(), knots_.back());
            const auto it = std::upper_bound(knots_.begin(), knots_.end(), tc);
            std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
            hi = std::min(hi, knots_.size() - 1);
            const std::size_t lo = hi - (hi > 0 ? 1 : 0);
            if (hi == lo) return vals_[lo];
            const double w = (tc - knots_[lo]) / (knots_[hi] - knots_[lo]);
            return vals_[lo] + w * (vals_[hi] - vals_[lo]);
        }
        case Variant::ExpOu:
            throw InvalidParameter("exp-OU intermittency has no pointwise value");
    }
    return 0.0;
}

double IntermittencyModel::second_moment_sup(double lo, double hi) const {
    switch (variant_) {
        case Variant::Constant:
            return value_ * value_;
        case Variant::Deterministic: {
            // Piecewise linear: the sup of sigma^2 over [lo, hi] is attained at a
            // knot or a window edge.
            double sup = 0.0;
            auto consider = [&](double t) {
                if (t >= knots_.front() && t <= knots_.back() && t >= lo && t <= hi) {
                    const double v = value(t);
                    sup = std::max(sup, v * v);
                }
            };
            consider(lo);
            consider(hi);
            for (double k : knots_) consider(k);
            return sup;
        }
        case Variant::ExpOu: {
            // Stationary: E[sigma^2] = exp(2 m + 2 v^2/(2 lambda)).
            return std::exp(2.0 * mean_log_ + vol_log_ * vol_log_ / reversion_);
        }
    }
    return 0.0;
}

double IntermittencyModel::zero_set_measure(double lo, double hi) const {
    switch (variant_) {
        case Variant::Constant:
        case Variant::ExpOu:
            return 0.0;
        case Variant::Deterministic: {
            // The interpolant vanishes on a set of positive measure only where two
            // consecutive knot values are both zero.
            double measure = 0.0;
            for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
                if (vals_[i] == 0.0 && vals_[i + 1] == 0.0) {
                    const double a = std::max(lo, knots_[i]);
                    const double b = std::min(hi, knots_[i + 1]);
                    if (b > a) measure += b - a;
                }
            }
            return measure;
        }
    }
    return 0.0;
}

SamplePath IntermittencyModel::sample(const SimGrid& grid, std::uint64_t seed,
                                      std::uint64_t stream) const {
    SamplePath path;
    path.grid = grid;
    path.role = PathRole::Sigma;
    path.values.resize(static_cast<std::size_t>(grid.n_points()));
    switch (variant_) {
        case Variant::Constant:
            std::fill(path.values.begin(), path.values.end(), value_);
            break;
        case Variant::Deterministic:
            for (int i = 0; i < grid.n_points(); ++i) {
                path.values[static_cast<std::size_t>(i)] = value(grid.point(i));
            }
            break;
        case Variant::ExpOu: {
            CounterRng rng(seed, stream);
            const double sd_stat = vol_log_ / std::sqrt(2.0 * reversion_);
            const double phi = std::exp(-reversion_ * grid.dt());
            const double sd_step = sd_stat * std::sqrt(1.0 - phi * phi);
            double u = mean_log_ + sd_stat * rng.normal();
            path.values[0] = std::exp(u);
            for (int i = 1; i < grid.n_points(); ++i) {
                u = mean_log_ + phi * (u - mean_log_) + sd_step * rng.normal();
                path.values[static_cast<std::size_t>(i)] = std::exp(u);
            }
            break;
        }
    }
    return path;
}

}  // namespace bss
