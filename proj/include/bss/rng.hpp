#pragma once

#include <cstdint>

namespace bss {

// SplitMix64 finalizer (full-avalanche 64-bit mixer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Quantile of the standard normal distribution (Wichura-style rational
// approximation, accurate to close to machine precision). p must be in (0,1).
double inverse_normal_cdf(double p);

// Standard normal CDF.
double normal_cdf(double x);

// Counter-based splittable generator. Output n of stream s is
// mix64(key(seed, s) + n * golden), so a (seed, stream) pair reproduces
// bit-identically regardless of evaluation order or worker count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(mix64(seed + 0x632be59bd9b4e019ULL) ^ (kGolden * (stream + 1)))) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + kGolden * ++counter_); }

    // Uniform on the open interval (0, 1).
    double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard normal via the inverse CDF (one uniform per draw).
    double normal() { return inverse_normal_cdf(uniform01()); }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Stream ids used by the simulator so that the same master seed never reuses
// a stream across roles. Per-trial streams start at kStreamTrialBase.
namespace streams {
inline constexpr std::uint64_t kWbar = 1;
inline constexpr std::uint64_t kWperp = 2;
inline constexpr std::uint64_t kSigma = 3;
inline constexpr std::uint64_t kDriftA = 4;
inline constexpr std::uint64_t kExactPath = 5;
inline constexpr std::uint64_t kTrialBase = 64;
}  // namespace streams

}  // namespace bss
