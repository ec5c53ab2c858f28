#pragma once

#include <any>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redgreen/core.hpp"
#include "redgreen/rng.hpp"

namespace redgreen {

// --------------------------------------------------------------------------
// Instruction sets: a total map Setting -> Color, written as three letters
// in setting order ("GGR" = green for 1 and 2, red for 3). Canonical order
// is RRR, RRG, RGR, RGG, GRR, GRG, GGR, GGG (index 0..7).
// --------------------------------------------------------------------------

class InstructionSet {
public:
    constexpr InstructionSet() : colors_{Color::Red, Color::Red, Color::Red} {}  // canonical index 0
    constexpr InstructionSet(Color s1, Color s2, Color s3) : colors_{s1, s2, s3} {}

    static InstructionSet from_string(const std::string& letters);  // e.g. "GGR"
    static InstructionSet from_index(int canonical);                // 0..7

    Color at(Setting s) const { return colors_[setting_index(s)]; }
    bool is_pure() const { return colors_[0] == colors_[1] && colors_[1] == colors_[2]; }
    int index() const {
        return 4 * static_cast<int>(colors_[0]) + 2 * static_cast<int>(colors_[1]) +
               static_cast<int>(colors_[2]);
    }
    std::string to_string() const;

    static const std::array<InstructionSet, 8>& all();  // canonical order

    friend constexpr bool operator==(const InstructionSet&, const InstructionSet&) = default;

private:
    std::array<Color, 3> colors_;
};

inline Color respond_instruction_set(const InstructionSet& set, Setting s) { return set.at(s); }

constexpr int kInstructionSetCount = 8;

// Nonnegative rational weights over the 8 canonical sets, summing to 1.
using MixtureWeights = std::array<Rational, kInstructionSetCount>;

void validate_mixture(const MixtureWeights& w);  // throws ValidationError

MixtureWeights point_mass(const InstructionSet& set);

// --------------------------------------------------------------------------
// Ambient conditions: the finite domain T of shared circumstances at the two
// detectors at the moment they are triggered. tau is identical at both wings
// within a run.
// --------------------------------------------------------------------------

using TauIndex = std::uint32_t;

struct AmbientCondition {
    TauIndex tau;
    Rational weight;
};

class AmbientDistribution {
public:
    AmbientDistribution();  // single tau with weight 1
    explicit AmbientDistribution(std::vector<Rational> weights);

    std::size_t size() const { return weights_.size(); }
    const Rational& weight(TauIndex tau) const { return weights_.at(tau); }
    bool in_support(TauIndex tau) const { return weights_.at(tau) > 0; }
    std::vector<TauIndex> support() const;  // ascending
    AmbientCondition condition(TauIndex tau) const { return {tau, weights_.at(tau)}; }
    TauIndex sample(RandomStream& rng) const;
    const std::vector<Rational>& weights() const { return weights_; }

private:
    std::vector<Rational> weights_;
    std::shared_ptr<const RationalSampler> sampler_;
};

// --------------------------------------------------------------------------
// The locality contract. A wing's response is a pure function of its own
// setting, the shared hidden state fixed at source departure, the shared
// ambient condition, and wing-local randomness. The far wing's setting is
// not a parameter, so it is unreachable by construction.
// --------------------------------------------------------------------------

// Opaque to the referee; only the owning model interprets it. Constant
// per-model data lives in the model object, so the state carries per-run
// draws only (it may be empty).
using HiddenState = std::any;

struct PrepareContext {
    std::uint64_t trial = 0;
    // Set only when the referee runs in source-visible ambient mode, in
    // which case the shared condition is already known at the source.
    std::optional<TauIndex> visible_tau;
};

class LocalModel {
public:
    virtual ~LocalModel() = default;

    virtual const AmbientDistribution& ambient() const = 0;
    virtual HiddenState prepare(const PrepareContext& ctx, RandomStream& source) const = 0;
    virtual Color respond(Wing wing, Setting setting, const HiddenState& state,
                          const AmbientCondition& ambient, RandomStream& local) const = 0;
};

class InstructionSetModel final : public LocalModel {
public:
    explicit InstructionSetModel(InstructionSet set) : set_(set) {}

    const AmbientDistribution& ambient() const override { return ambient_; }
    HiddenState prepare(const PrepareContext&, RandomStream&) const override { return set_; }
    Color respond(Wing, Setting setting, const HiddenState& state, const AmbientCondition&,
                  RandomStream&) const override {
        return std::any_cast<const InstructionSet&>(state).at(setting);
    }
    const InstructionSet& set() const { return set_; }

private:
    InstructionSet set_;
    AmbientDistribution ambient_;
};

// Draws one instruction set per run from a fixed mixture.
class MixtureModel final : public LocalModel {
public:
    explicit MixtureModel(MixtureWeights weights);

    const AmbientDistribution& ambient() const override { return ambient_; }
    HiddenState prepare(const PrepareContext&, RandomStream& source) const override;
    Color respond(Wing, Setting setting, const HiddenState& state, const AmbientCondition&,
                  RandomStream&) const override {
        return std::any_cast<const InstructionSet&>(state).at(setting);
    }
    const MixtureWeights& weights() const { return weights_; }

private:
    MixtureWeights weights_;
    RationalSampler sampler_;
    AmbientDistribution ambient_;
};

// --------------------------------------------------------------------------
// Microsetting models: each macroscopic setting is underlain by a finite set
// of microsettings per wing; the shared ambient condition selects which one
// is active, and a per-wing color map says how each microsetting flashes.
// --------------------------------------------------------------------------

using MicroId = std::uint32_t;

struct MicrosettingModel {
    // [wing][setting_index]: the declared microsettings, sorted, unique,
    // nonempty. Identifiers are per-wing (the color map below is keyed by
    // them) and must not repeat across that wing's settings.
    std::array<std::array<std::vector<MicroId>, 3>, 2> micro_sets;

    // [wing][setting_index][tau]: which declared microsetting underlies the
    // setting when the ambient condition is tau. Length = |T| for each cell.
    std::array<std::array<std::vector<MicroId>, 3>, 2> select;

    // [wing]: microsetting -> color, total on every declared microsetting.
    std::array<std::map<MicroId, Color>, 2> color_map;

    AmbientDistribution ambient;

    // When set, the color produced at each (wing, setting) is the same for
    // every tau in the support: the type choice does not vary with time.
    bool stationary = false;

    void validate() const;  // throws ValidationError on any broken invariant

    MicroId selected(Wing w, Setting s, TauIndex tau) const;
    Color color_of(Wing w, MicroId m) const;
};

// color_map[wing](select[wing](setting, tau)); tau must lie in T.
Color microsetting_respond(const MicrosettingModel& m, Wing wing, Setting setting, TauIndex tau);

class MicrosettingLocalModel final : public LocalModel {
public:
    explicit MicrosettingLocalModel(MicrosettingModel m);

    const AmbientDistribution& ambient() const override { return model_.ambient; }
    HiddenState prepare(const PrepareContext&, RandomStream&) const override {
        return HiddenState{};  // the extended instruction set is model-constant
    }
    Color respond(Wing wing, Setting setting, const HiddenState&, const AmbientCondition& ambient,
                  RandomStream&) const override {
        return microsetting_respond(model_, wing, setting, ambient.tau);
    }
    const MicrosettingModel& model() const { return model_; }

private:
    MicrosettingModel model_;
};

// Generator parameters. All sizes must be positive.
struct CompliantModelParams {
    std::uint32_t max_micro_per_setting = 3;  // per wing and setting, drawn in [1, max]
    std::uint32_t ambient_size = 4;           // |T| (full_support may enlarge it)
    std::uint32_t max_weight = 8;             // ambient weights ~ k/sum with k in [1, max]
    bool stationary = false;
    // Make every same-setting microsetting pair coexist for some tau. This
    // forces a single color class per setting, so the model is built with
    // all microsettings of one type.
    bool full_support = false;
};

// Constructs a model satisfying feature (i) exactly, by construction: both
// wings share a base instruction set and a per-(setting, tau) type choice;
// type-I microsettings flash the base color, type-II the opposite.
MicrosettingModel generate_compliant_model(const CompliantModelParams& params, RandomStream& rng);

// --------------------------------------------------------------------------
// Joint outcome tables: per setting pair, an exact distribution over the four
// outcome pairs. This is the representation used for the quantum reference —
// the experiment only ever consumes the resulting statistics.
// --------------------------------------------------------------------------

class JointTable {
public:
    JointTable();  // all rows zero; fill then validate_rows()

    const Rational& probability(SettingPair p, OutcomePair o) const {
        return rows_[p.index()][o.index()];
    }
    void set_probability(SettingPair p, OutcomePair o, Rational v) {
        rows_[p.index()][o.index()] = std::move(v);
    }
    const std::array<Rational, kOutcomeCount>& row(SettingPair p) const { return rows_[p.index()]; }

    void validate_rows() const;  // nonnegative, each row sums to 1

    Rational row_same_mass(SettingPair p) const;
    Rational overall_same_mass() const;      // uniform 1/9 over pairs
    Rational feature_i_conditional() const;  // same-color mass given a same-setting pair
    Rational marginal(Wing w, SettingPair p, Color c) const;

    // Integer tally whose relative frequencies equal this table exactly:
    // cell (p, o) holds L * probability, total 9L, with L the lcm of all
    // cell denominators. Lets exact expectations flow through the same
    // statistics as simulated counts.
    TallyTable expectation_tally() const;

    friend bool operator==(const JointTable&, const JointTable&) = default;

private:
    std::array<std::array<Rational, kOutcomeCount>, kPairCount> rows_;
};

using QuantumJointTable = JointTable;

// The singlet realization with three coplanar measurement directions 120
// degrees apart and the R/G labels swapped at wing B. Same-setting rows are
// {RR: 1/2, GG: 1/2}; different-setting rows are {RR: 1/8, RG: 3/8,
// GR: 3/8, GG: 1/8}. The label swap convention is baked into the table;
// any consistent convention reproducing these rows is equivalent.
QuantumJointTable singlet_joint_table();

// Exact samplers for a joint table (one per row, precomputed).
class JointSampler {
public:
    explicit JointSampler(const JointTable& table);
    OutcomePair sample(SettingPair p, RandomStream& rng) const;

private:
    std::vector<RationalSampler> samplers_;  // one per setting pair
};

OutcomePair sample_reference(const JointTable& table, SettingPair p, RandomStream& rng);

// Exact joint distributions induced by local strategies under uniform
// settings. These enumerate directly over the strategy's own structure and
// serve as the second route against effective-set computations.
JointTable joint_table_of(const InstructionSet& set);
JointTable joint_table_of(const MixtureWeights& weights);
JointTable joint_table_of(const MicrosettingModel& m);

// --------------------------------------------------------------------------
// Joint models: generators that produce both outcomes from the pair of
// settings at once. They do not implement LocalModel — a function that takes
// the whole SettingPair cannot enter any LocalModel-only analysis.
// --------------------------------------------------------------------------

class JointModel {
public:
    virtual ~JointModel() = default;
    virtual OutcomePair respond_joint(SettingPair pair, RandomStream& rng) const = 0;
};

class QuantumReferenceModel final : public JointModel {
public:
    QuantumReferenceModel();
    OutcomePair respond_joint(SettingPair pair, RandomStream& rng) const override;
    const QuantumJointTable& table() const { return table_; }

private:
    QuantumJointTable table_;
    JointSampler sampler_;
};

// Negative control: reproduces the reference statistics by construction, but
// does so by letting each wing's output depend on the far wing's setting.
// The wing_probe shim below exposes exactly that dependence to the locality
// replay check, which must fail on it.
class NonlocalControl final : public JointModel {
public:
    NonlocalControl();
    OutcomePair respond_joint(SettingPair pair, RandomStream& rng) const override;

    // Shared-state shim for the replay check: prepare captures one draw,
    // probe deterministically maps (near, far, draw) to this wing's color.
    HiddenState prepare_shared(const PrepareContext&, RandomStream& source) const;
    Color probe(Wing wing, Setting near, Setting far, const HiddenState& state) const;

    const QuantumJointTable& table() const { return table_; }

private:
    OutcomePair outcome_for(SettingPair pair, std::uint64_t u) const;  // u in [0,8)
    QuantumJointTable table_;
};

OutcomePair nonlocal_control_respond(SettingPair pair, RandomStream& rng);

// --------------------------------------------------------------------------
// Adaptive strategies: the per-run instruction-set distribution may depend
// on all completed earlier runs, never on the current run's settings.
// --------------------------------------------------------------------------

class AdaptiveStrategy {
public:
    virtual ~AdaptiveStrategy() = default;
    virtual MixtureWeights next(std::span<const RunRecord> history) const = 0;
};

class ConstantStrategy final : public AdaptiveStrategy {
public:
    explicit ConstantStrategy(InstructionSet set) : set_(set) {}
    MixtureWeights next(std::span<const RunRecord>) const override { return point_mass(set_); }

private:
    InstructionSet set_;
};

// Alternates between two sets by history-length parity.
class ParityStrategy final : public AdaptiveStrategy {
public:
    ParityStrategy(InstructionSet even, InstructionSet odd) : even_(even), odd_(odd) {}
    MixtureWeights next(std::span<const RunRecord> history) const override {
        return point_mass(history.size() % 2 == 0 ? even_ : odd_);
    }

private:
    InstructionSet even_;
    InstructionSet odd_;
};

// Leans on the observed same/different balance: once same-colored runs pull
// ahead it plays the six mixed sets uniformly, otherwise all eight. Exists
// to exercise genuinely history-dependent distributions.
class FeedbackStrategy final : public AdaptiveStrategy {
public:
    MixtureWeights next(std::span<const RunRecord> history) const override;
};

}  // namespace redgreen
