#include "redgreen/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace redgreen {

Setting setting_from_number(int n) {
    if (n < 1 || n > 3) {
        throw ValidationError("setting must be 1, 2, or 3, got " + std::to_string(n));
    }
    return static_cast<Setting>(n);
}

Color color_from_char(char c) {
    if (c == 'R') return Color::Red;
    if (c == 'G') return Color::Green;
    throw ValidationError(std::string("color must be R or G, got '") + c + "'");
}

Probability Probability::exact(Rational value) {
    if (value < 0 || value > 1) {
        throw ValidationError("probability out of [0,1]: " + format_rational(value));
    }
    return Probability(std::variant<Rational, Estimate>(std::in_place_index<0>, std::move(value)));
}

Probability Probability::estimate(double value, std::uint64_t sample_size) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError("estimate out of [0,1]: " + std::to_string(value));
    }
    if (sample_size == 0) throw ValidationError("estimate requires a positive sample size");
    return Probability(std::variant<Rational, Estimate>(Estimate{value, sample_size}));
}

const Rational& Probability::exact_value() const {
    if (!is_exact()) throw ValidationError("probability is an estimate, not exact");
    return std::get<Rational>(v_);
}

const Probability::Estimate& Probability::estimate_value() const {
    if (is_exact()) throw ValidationError("probability is exact, not an estimate");
    return std::get<Estimate>(v_);
}

double Probability::as_double() const {
    return is_exact() ? to_double(std::get<Rational>(v_)) : std::get<Estimate>(v_).value;
}

std::uint64_t TallyTable::pair_total(SettingPair p) const {
    const auto& row = counts_[p.index()];
    std::uint64_t sum = 0;
    for (const std::uint64_t c : row) sum += c;
    return sum;
}

std::uint64_t TallyTable::pair_same_count(SettingPair p) const {
    const auto& row = counts_[p.index()];
    std::uint64_t sum = 0;
    for (int o = 0; o < kOutcomeCount; ++o) {
        if (OutcomePair::from_index(o).is_same()) sum += row[o];
    }
    return sum;
}

std::uint64_t TallyTable::same_color_count() const {
    std::uint64_t sum = 0;
    for (int p = 0; p < kPairCount; ++p) sum += pair_same_count(SettingPair::from_index(p));
    return sum;
}

std::uint64_t TallyTable::same_setting_total() const {
    std::uint64_t sum = 0;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (pair.is_same()) sum += pair_total(pair);
    }
    return sum;
}

std::uint64_t TallyTable::same_setting_same_color() const {
    std::uint64_t sum = 0;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (pair.is_same()) sum += pair_same_count(pair);
    }
    return sum;
}

TallyTable& TallyTable::operator+=(const TallyTable& other) {
    for (int p = 0; p < kPairCount; ++p) {
        for (int o = 0; o < kOutcomeCount; ++o) counts_[p][o] += other.counts_[p][o];
    }
    total_ += other.total_;
    return *this;
}

TallyTable tally(std::span<const RunRecord> records) {
    TallyTable t;
    for (const RunRecord& r : records) t.add(r);
    return t;
}

Probability same_color_fraction(const TallyTable& t) {
    if (t.total() == 0) throw EmptyDataError("same_color_fraction: empty tally");
    return Probability::exact(Rational(BigInt(t.same_color_count()), BigInt(t.total())));
}

Probability feature_i_fraction(const TallyTable& t) {
    const std::uint64_t n = t.same_setting_total();
    if (n == 0) throw EmptyDataError("feature_i_fraction: no same-setting runs recorded");
    return Probability::exact(Rational(BigInt(t.same_setting_same_color()), BigInt(n)));
}

std::array<std::optional<Probability>, kPairCount> per_pair_same_table(const TallyTable& t) {
    std::array<std::optional<Probability>, kPairCount> out;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        const std::uint64_t n = t.pair_total(pair);
        if (n == 0) continue;
        out[p] = Probability::exact(Rational(BigInt(t.pair_same_count(pair)), BigInt(n)));
    }
    return out;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) throw EmptyDataError("wilson_interval: n = 0");
    if (successes > n) throw ValidationError("wilson_interval: successes exceed n");
    if (!(z > 0.0)) throw ValidationError("wilson_interval: z must be positive");
    const double nn = static_cast<double>(n);
    const double p_hat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
    // At the degenerate tails the interval ends exactly on the boundary;
    // compute it that way rather than rounding toward it.
    const double lower = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
    const double upper = successes == n ? 1.0 : std::clamp(center + half, 0.0, 1.0);
    return {lower, upper};
}

}  // namespace redgreen
