#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>

#include "redgreen/errors.hpp"
#include "redgreen/rational.hpp"

namespace redgreen {

// --------------------------------------------------------------------------
// Experiment alphabet: two detectors, three settings, two lamp colors.
// --------------------------------------------------------------------------

enum class Setting : std::uint8_t { One = 1, Two = 2, Three = 3 };

constexpr std::array<Setting, 3> all_settings() {
    return {Setting::One, Setting::Two, Setting::Three};
}
constexpr int setting_index(Setting s) { return static_cast<int>(s) - 1; }  // 0-based
constexpr int setting_number(Setting s) { return static_cast<int>(s); }     // 1-based
Setting setting_from_number(int n);  // throws ValidationError outside 1..3

enum class Color : std::uint8_t { Red = 0, Green = 1 };

constexpr Color opposite(Color c) { return c == Color::Red ? Color::Green : Color::Red; }
constexpr char color_char(Color c) { return c == Color::Red ? 'R' : 'G'; }
Color color_from_char(char c);  // throws ValidationError

enum class Wing : std::uint8_t { A = 0, B = 1 };

constexpr int wing_index(Wing w) { return static_cast<int>(w); }
constexpr char wing_char(Wing w) { return w == Wing::A ? 'A' : 'B'; }

// One of the nine equally likely setting pairs per run.
struct SettingPair {
    Setting a;
    Setting b;

    constexpr bool is_same() const { return a == b; }
    constexpr int index() const { return 3 * setting_index(a) + setting_index(b); }  // 0..8
    static constexpr SettingPair from_index(int i) {
        return {static_cast<Setting>(1 + i / 3), static_cast<Setting>(1 + i % 3)};
    }
    friend constexpr auto operator<=>(const SettingPair&, const SettingPair&) = default;
};

struct OutcomePair {
    Color a;
    Color b;

    constexpr bool is_same() const { return a == b; }
    constexpr int index() const { return 2 * static_cast<int>(a) + static_cast<int>(b); }  // RR,RG,GR,GG
    static constexpr OutcomePair from_index(int i) {
        return {static_cast<Color>((i >> 1) & 1), static_cast<Color>(i & 1)};
    }
    friend constexpr auto operator<=>(const OutcomePair&, const OutcomePair&) = default;
};

constexpr int kPairCount = 9;
constexpr int kOutcomeCount = 4;

// One completed run. Trial indices within an experiment are 0-based,
// unique, and contiguous.
struct RunRecord {
    std::uint64_t trial;
    SettingPair pair;
    OutcomePair outcome;

    friend constexpr bool operator==(const RunRecord&, const RunRecord&) = default;
};

// --------------------------------------------------------------------------
// Probability: exact rational or a Monte Carlo estimate tagged with its
// sample size. The two are never mixed silently; callers must pick a lane.
// --------------------------------------------------------------------------

class Probability {
public:
    struct Estimate {
        double value;
        std::uint64_t sample_size;
    };

    static Probability exact(Rational value);                         // value in [0,1]
    static Probability estimate(double value, std::uint64_t sample_size);

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& exact_value() const;  // throws ValidationError on estimates
    const Estimate& estimate_value() const;
    double as_double() const;

    friend bool operator==(const Probability&, const Probability&) = default;

private:
    explicit Probability(std::variant<Rational, Estimate> v) : v_(std::move(v)) {}
    std::variant<Rational, Estimate> v_;
};

// --------------------------------------------------------------------------
// TallyTable: the 9 x 4 contingency counts accumulated over many runs.
// Cell-wise addition is associative and commutative, so tallies from
// parallel shards merge into exactly the sequential result.
// --------------------------------------------------------------------------

class TallyTable {
public:
    void add(SettingPair p, OutcomePair o) {
        ++counts_[p.index()][o.index()];
        ++total_;
    }
    void add(const RunRecord& r) { add(r.pair, r.outcome); }
    void add_count(SettingPair p, OutcomePair o, std::uint64_t n) {
        counts_[p.index()][o.index()] += n;
        total_ += n;
    }

    std::uint64_t count(SettingPair p, OutcomePair o) const { return counts_[p.index()][o.index()]; }
    std::uint64_t pair_total(SettingPair p) const;
    std::uint64_t pair_same_count(SettingPair p) const;
    std::uint64_t same_color_count() const;
    std::uint64_t same_setting_total() const;       // runs with pair 11, 22, or 33
    std::uint64_t same_setting_same_color() const;  // of those, same-colored
    std::uint64_t total() const { return total_; }

    TallyTable& operator+=(const TallyTable& other);

    friend bool operator==(const TallyTable&, const TallyTable&) = default;

private:
    std::array<std::array<std::uint64_t, kOutcomeCount>, kPairCount> counts_{};
    std::uint64_t total_ = 0;
};

TallyTable tally(std::span<const RunRecord> records);

// Fraction of all runs with same-colored flashes, exact as a rational of
// counts. Throws EmptyDataError on an empty table.
Probability same_color_fraction(const TallyTable& t);

// Fraction of same-setting runs (pairs 11, 22, 33) with same-colored
// flashes. Throws EmptyDataError when no same-setting run was recorded.
Probability feature_i_fraction(const TallyTable& t);

// Conditional same-color probability per setting pair, indexed by
// SettingPair::index(). Pairs with no recorded runs are reported as
// nullopt — undefined, never zero.
std::array<std::optional<Probability>, kPairCount> per_pair_same_table(const TallyTable& t);

// --------------------------------------------------------------------------
// Wilson score interval for a binomial proportion. Chosen over Wald because
// small conditional cells occur at low trial counts.
// --------------------------------------------------------------------------

struct WilsonInterval {
    double lower;
    double upper;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z);

}  // namespace redgreen
