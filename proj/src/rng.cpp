#include "redgreen/rng.hpp"

#include <numeric>

namespace redgreen {

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw ValidationError("uniform_below: bound must be positive");
    if (bound == 1) return 0;
    // 2^64 mod bound; draws below it would overweight the low residues.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = next();
        if (x >= threshold) return x % bound;
    }
}

BigInt RandomStream::uniform_below_big(const BigInt& bound) {
    if (bound <= 0) throw ValidationError("uniform_below_big: bound must be positive");
    if (bound == 1) return 0;
    std::size_t words = 0;
    for (BigInt b = bound - 1; b > 0; b >>= 64) ++words;
    const BigInt span = BigInt(1) << (64 * words);
    const BigInt threshold = span % bound;
    for (;;) {
        BigInt x = 0;
        for (std::size_t w = 0; w < words; ++w) {
            x <<= 64;
            x |= BigInt(next());
        }
        if (x >= threshold) return (x - threshold) % bound;
    }
}

RationalSampler::RationalSampler(std::span<const Rational> weights) : size_(weights.size()) {
    if (weights.empty()) throw ValidationError("sampler: no weights");
    Rational sum = 0;
    BigInt denom = 1;
    for (const Rational& w : weights) {
        if (w < 0) throw ValidationError("sampler: negative weight " + format_rational(w));
        sum += w;
        denom = lcm(denom, denominator(w));
    }
    if (sum != 1) {
        throw ValidationError("sampler: weights sum to " + format_rational(sum) + ", expected 1/1");
    }
    denom_big_ = denom;
    BigInt running = 0;
    for (const Rational& w : weights) {
        running += numerator(w) * (denom / denominator(w));
        cum_big_.push_back(running);
    }
    // cum_big_.back() == denom because the weights sum to 1 exactly.
    if (denom <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        small_ = true;
        denom_u64_ = denom.convert_to<std::uint64_t>();
        for (const BigInt& c : cum_big_) cum_u64_.push_back(c.convert_to<std::uint64_t>());
    }
}

std::size_t RationalSampler::sample(RandomStream& rng) const {
    if (small_) {
        const std::uint64_t u = rng.uniform_below(denom_u64_);
        for (std::size_t i = 0; i < cum_u64_.size(); ++i) {
            if (u < cum_u64_[i]) return i;
        }
        return cum_u64_.size() - 1;  // unreachable for valid weights
    }
    const BigInt u = rng.uniform_below_big(denom_big_);
    for (std::size_t i = 0; i < cum_big_.size(); ++i) {
        if (u < cum_big_[i]) return i;
    }
    return cum_big_.size() - 1;
}

}  // namespace redgreen
