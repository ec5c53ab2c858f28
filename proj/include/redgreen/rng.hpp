#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redgreen/rational.hpp"

namespace redgreen {

// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood). Bijective and
// well mixed; the basis for key derivation and stream output below.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One substream per (trial, role). Keeping roles separate makes every draw a
// pure function of (seed, trial, role, counter): trials can run in any order,
// on any number of workers, and replay bit-identically.
enum class Role : std::uint64_t {
    SettingsA = 1,
    SettingsB = 2,
    Source = 3,
    Ambient = 4,
    WingA = 5,
    WingB = 6,
};

// Counter-based stream: output i is mix64(key + i * golden), with the key
// derived by chained mixing of (seed, trial, role). Distinct keys give
// statistically independent sequences; identical keys replay exactly.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trial, Role role)
        : key_(derive_key(seed, trial, role)) {}

    std::uint64_t next() { return mix64(key_ + ++counter_ * 0x9e3779b97f4a7c15ULL); }

    // Unbiased draw in [0, bound) by rejection (arc4random_uniform scheme).
    std::uint64_t uniform_below(std::uint64_t bound);

    // Same contract for arbitrary-precision bounds; assembles 64-bit words
    // and rejects the biased remainder range.
    BigInt uniform_below_big(const BigInt& bound);

    std::uint64_t draws() const { return counter_; }

    static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial, Role role) {
        return mix64(mix64(mix64(seed) ^ trial) ^ static_cast<std::uint64_t>(role));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Exact sampler for a finite distribution with rational weights. Weights are
// brought to a common denominator D and an integer is drawn uniformly in
// [0, D), so sampled frequencies match the weights exactly in distribution —
// no floating point is involved.
class RationalSampler {
public:
    // Weights must be nonnegative and sum to exactly 1.
    explicit RationalSampler(std::span<const Rational> weights);

    std::size_t sample(RandomStream& rng) const;
    std::size_t size() const { return size_; }

private:
    std::size_t size_ = 0;
    bool small_ = false;
    std::uint64_t denom_u64_ = 0;
    std::vector<std::uint64_t> cum_u64_;  // cumulative scaled weights
    BigInt denom_big_;
    std::vector<BigInt> cum_big_;
};

}  // namespace redgreen
