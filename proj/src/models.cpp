#include "redgreen/models.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace redgreen {

// ---------------------------------------------------------------- sets ----

InstructionSet InstructionSet::from_string(const std::string& letters) {
    if (letters.size() != 3) {
        throw ValidationError("instruction set must be 3 letters over {R,G}, got '" + letters + "'");
    }
    return InstructionSet(color_from_char(letters[0]), color_from_char(letters[1]),
                          color_from_char(letters[2]));
}

InstructionSet InstructionSet::from_index(int canonical) {
    if (canonical < 0 || canonical >= kInstructionSetCount) {
        throw ValidationError("instruction set index out of range: " + std::to_string(canonical));
    }
    return InstructionSet(static_cast<Color>((canonical >> 2) & 1),
                          static_cast<Color>((canonical >> 1) & 1),
                          static_cast<Color>(canonical & 1));
}

std::string InstructionSet::to_string() const {
    return {color_char(colors_[0]), color_char(colors_[1]), color_char(colors_[2])};
}

const std::array<InstructionSet, 8>& InstructionSet::all() {
    static const std::array<InstructionSet, 8> sets{
        from_index(0), from_index(1), from_index(2), from_index(3),
        from_index(4), from_index(5), from_index(6), from_index(7)};
    return sets;
}

void validate_mixture(const MixtureWeights& w) {
    Rational sum = 0;
    for (int i = 0; i < kInstructionSetCount; ++i) {
        if (w[i] < 0) {
            throw ValidationError("mixture weight for " + InstructionSet::from_index(i).to_string() +
                                  " is negative: " + format_rational(w[i]));
        }
        sum += w[i];
    }
    if (sum != 1) {
        throw ValidationError("mixture weights sum to " + format_rational(sum) + ", expected 1/1");
    }
}

MixtureWeights point_mass(const InstructionSet& set) {
    MixtureWeights w{};
    w[set.index()] = 1;
    return w;
}

// ------------------------------------------------------------- ambient ----

AmbientDistribution::AmbientDistribution() : AmbientDistribution(std::vector<Rational>{Rational(1)}) {}

AmbientDistribution::AmbientDistribution(std::vector<Rational> weights)
    : weights_(std::move(weights)),
      sampler_(std::make_shared<const RationalSampler>(std::span<const Rational>(weights_))) {}

std::vector<TauIndex> AmbientDistribution::support() const {
    std::vector<TauIndex> out;
    for (TauIndex t = 0; t < weights_.size(); ++t) {
        if (weights_[t] > 0) out.push_back(t);
    }
    return out;
}

TauIndex AmbientDistribution::sample(RandomStream& rng) const {
    return static_cast<TauIndex>(sampler_->sample(rng));
}

// ------------------------------------------------------------- mixture ----

MixtureModel::MixtureModel(MixtureWeights weights)
    : weights_(std::move(weights)), sampler_(std::span<const Rational>(weights_)) {
    validate_mixture(weights_);
}

HiddenState MixtureModel::prepare(const PrepareContext&, RandomStream& source) const {
    return InstructionSet::from_index(static_cast<int>(sampler_.sample(source)));
}

// ------------------------------------------------------- microsettings ----

namespace {

std::string cell_name(Wing w, Setting s) {
    std::ostringstream os;
    os << "wing " << wing_char(w) << ", setting " << setting_number(s);
    return os.str();
}

}  // namespace

void MicrosettingModel::validate() const {
    for (const Wing w : {Wing::A, Wing::B}) {
        std::set<MicroId> seen;
        for (const Setting s : all_settings()) {
            const auto& ids = micro_sets[wing_index(w)][setting_index(s)];
            if (ids.empty()) {
                throw ValidationError("micro_sets: empty set at " + cell_name(w, s));
            }
            if (!std::is_sorted(ids.begin(), ids.end()) ||
                std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
                throw ValidationError("micro_sets: not sorted/unique at " + cell_name(w, s));
            }
            for (const MicroId id : ids) {
                if (!seen.insert(id).second) {
                    throw ValidationError("micro_sets: id " + std::to_string(id) +
                                          " reused across settings at " + cell_name(w, s));
                }
                if (!color_map[wing_index(w)].count(id)) {
                    throw ValidationError("color_map: no color for microsetting " +
                                          std::to_string(id) + " at " + cell_name(w, s));
                }
            }
            const auto& sel = select[wing_index(w)][setting_index(s)];
            if (sel.size() != ambient.size()) {
                throw ValidationError("select: expected one entry per tau (" +
                                      std::to_string(ambient.size()) + ") at " + cell_name(w, s) +
                                      ", got " + std::to_string(sel.size()));
            }
            for (std::size_t tau = 0; tau < sel.size(); ++tau) {
                if (!std::binary_search(ids.begin(), ids.end(), sel[tau])) {
                    throw ValidationError("select: microsetting " + std::to_string(sel[tau]) +
                                          " at " + cell_name(w, s) + ", tau " + std::to_string(tau) +
                                          " is not in the declared micro_set");
                }
            }
        }
        for (const auto& [id, color] : color_map[wing_index(w)]) {
            (void)color;
            if (!seen.count(id)) {
                throw ValidationError("color_map: wing " + std::string(1, wing_char(w)) +
                                      " maps undeclared microsetting " + std::to_string(id));
            }
        }
    }
    if (stationary) {
        for (const Wing w : {Wing::A, Wing::B}) {
            for (const Setting s : all_settings()) {
                std::optional<Color> fixed;
                for (const TauIndex tau : ambient.support()) {
                    const Color c = color_of(w, selected(w, s, tau));
                    if (!fixed) {
                        fixed = c;
                    } else if (*fixed != c) {
                        throw ValidationError("stationary model changes color over tau at " +
                                              cell_name(w, s));
                    }
                }
            }
        }
    }
}

MicroId MicrosettingModel::selected(Wing w, Setting s, TauIndex tau) const {
    const auto& sel = select[wing_index(w)][setting_index(s)];
    if (tau >= sel.size()) {
        throw ValidationError("tau " + std::to_string(tau) + " outside ambient domain of size " +
                              std::to_string(sel.size()));
    }
    return sel[tau];
}

Color MicrosettingModel::color_of(Wing w, MicroId m) const {
    const auto it = color_map[wing_index(w)].find(m);
    if (it == color_map[wing_index(w)].end()) {
        throw ValidationError("no color for microsetting " + std::to_string(m) + " at wing " +
                              std::string(1, wing_char(w)));
    }
    return it->second;
}

Color microsetting_respond(const MicrosettingModel& m, Wing wing, Setting setting, TauIndex tau) {
    return m.color_of(wing, m.selected(wing, setting, tau));
}

MicrosettingLocalModel::MicrosettingLocalModel(MicrosettingModel m) : model_(std::move(m)) {
    model_.validate();
}

MicrosettingModel generate_compliant_model(const CompliantModelParams& params, RandomStream& rng) {
    if (params.max_micro_per_setting < 1 || params.ambient_size < 1 || params.max_weight < 1) {
        throw ValidationError("generate_compliant_model: sizes must be positive");
    }

    const InstructionSet base = InstructionSet::from_index(static_cast<int>(rng.uniform_below(8)));

    MicrosettingModel m;
    // Declared microsettings and their types. Micro 0 of every cell is kept
    // type I so both wings always share at least one type per setting.
    std::array<std::array<std::vector<bool>, 3>, 2> is_type2;
    for (const Wing w : {Wing::A, Wing::B}) {
        MicroId next_id = 0;
        for (const Setting s : all_settings()) {
            const auto n = 1 + rng.uniform_below(params.max_micro_per_setting);
            auto& ids = m.micro_sets[wing_index(w)][setting_index(s)];
            auto& types = is_type2[wing_index(w)][setting_index(s)];
            for (std::uint64_t k = 0; k < n; ++k) {
                const MicroId id = next_id++;
                const bool type2 = k > 0 && !params.full_support && rng.uniform_below(2) == 1;
                ids.push_back(id);
                types.push_back(type2);
                m.color_map[wing_index(w)][id] = type2 ? opposite(base.at(s)) : base.at(s);
            }
        }
    }

    std::size_t domain = params.ambient_size;
    if (params.full_support) {
        for (const Setting s : all_settings()) {
            domain = std::max(domain, m.micro_sets[0][setting_index(s)].size() *
                                          m.micro_sets[1][setting_index(s)].size());
        }
    }

    std::vector<Rational> weights;
    BigInt weight_sum = 0;
    std::vector<std::uint64_t> raw;
    for (std::size_t t = 0; t < domain; ++t) {
        raw.push_back(1 + rng.uniform_below(params.max_weight));
        weight_sum += raw.back();
    }
    for (std::size_t t = 0; t < domain; ++t) weights.emplace_back(BigInt(raw[t]), weight_sum);
    m.ambient = AmbientDistribution(std::move(weights));
    m.stationary = params.stationary || params.full_support;

    // Type demanded by each (setting, tau), common to both wings.
    std::array<bool, 3> type2_available{};
    for (const Setting s : all_settings()) {
        bool both = true;
        for (const Wing w : {Wing::A, Wing::B}) {
            const auto& types = is_type2[wing_index(w)][setting_index(s)];
            both = both && std::find(types.begin(), types.end(), true) != types.end();
        }
        type2_available[setting_index(s)] = both;
    }
    std::array<bool, 3> stationary_choice{};
    for (const Setting s : all_settings()) {
        stationary_choice[setting_index(s)] =
            type2_available[setting_index(s)] && rng.uniform_below(2) == 1;
    }

    for (const Setting s : all_settings()) {
        const std::size_t na = m.micro_sets[0][setting_index(s)].size();
        const std::size_t nb = m.micro_sets[1][setting_index(s)].size();
        for (std::size_t tau = 0; tau < domain; ++tau) {
            if (params.full_support) {
                const std::size_t idx = tau % (na * nb);
                m.select[0][setting_index(s)].push_back(
                    m.micro_sets[0][setting_index(s)][idx / nb]);
                m.select[1][setting_index(s)].push_back(
                    m.micro_sets[1][setting_index(s)][idx % nb]);
                continue;
            }
            bool want_type2;
            if (params.stationary) {
                want_type2 = stationary_choice[setting_index(s)];
            } else {
                want_type2 = type2_available[setting_index(s)] && rng.uniform_below(2) == 1;
            }
            for (const Wing w : {Wing::A, Wing::B}) {
                const auto& ids = m.micro_sets[wing_index(w)][setting_index(s)];
                const auto& types = is_type2[wing_index(w)][setting_index(s)];
                std::vector<MicroId> pool;
                for (std::size_t k = 0; k < ids.size(); ++k) {
                    if (types[k] == want_type2) pool.push_back(ids[k]);
                }
                m.select[wing_index(w)][setting_index(s)].push_back(
                    pool[rng.uniform_below(pool.size())]);
            }
        }
    }

    m.validate();
    return m;
}

// ---------------------------------------------------------- joint table ----

JointTable::JointTable() = default;

void JointTable::validate_rows() const {
    for (int p = 0; p < kPairCount; ++p) {
        Rational sum = 0;
        for (int o = 0; o < kOutcomeCount; ++o) {
            if (rows_[p][o] < 0) {
                throw ValidationError("joint table: negative probability in row " +
                                      std::to_string(p));
            }
            sum += rows_[p][o];
        }
        if (sum != 1) {
            throw ValidationError("joint table: row " + std::to_string(p) + " sums to " +
                                  format_rational(sum));
        }
    }
}

Rational JointTable::row_same_mass(SettingPair p) const {
    Rational sum = 0;
    for (int o = 0; o < kOutcomeCount; ++o) {
        if (OutcomePair::from_index(o).is_same()) sum += rows_[p.index()][o];
    }
    return sum;
}

Rational JointTable::overall_same_mass() const {
    Rational sum = 0;
    for (int p = 0; p < kPairCount; ++p) sum += row_same_mass(SettingPair::from_index(p));
    return sum / 9;
}

Rational JointTable::feature_i_conditional() const {
    Rational sum = 0;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (pair.is_same()) sum += row_same_mass(pair);
    }
    return sum / 3;
}

Rational JointTable::marginal(Wing w, SettingPair p, Color c) const {
    Rational sum = 0;
    for (int o = 0; o < kOutcomeCount; ++o) {
        const OutcomePair out = OutcomePair::from_index(o);
        if ((w == Wing::A ? out.a : out.b) == c) sum += rows_[p.index()][o];
    }
    return sum;
}

TallyTable JointTable::expectation_tally() const {
    validate_rows();
    BigInt scale = 1;
    for (int p = 0; p < kPairCount; ++p) {
        for (int o = 0; o < kOutcomeCount; ++o) scale = lcm(scale, denominator(rows_[p][o]));
    }
    TallyTable t;
    for (int p = 0; p < kPairCount; ++p) {
        for (int o = 0; o < kOutcomeCount; ++o) {
            const BigInt count = numerator(rows_[p][o]) * (scale / denominator(rows_[p][o]));
            if (count > BigInt(std::numeric_limits<std::uint64_t>::max())) {
                throw ValidationError("expectation tally: counts overflow 64 bits");
            }
            t.add_count(SettingPair::from_index(p), OutcomePair::from_index(o),
                        count.convert_to<std::uint64_t>());
        }
    }
    return t;
}

QuantumJointTable singlet_joint_table() {
    JointTable t;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (pair.is_same()) {
            t.set_probability(pair, {Color::Red, Color::Red}, Rational(1, 2));
            t.set_probability(pair, {Color::Green, Color::Green}, Rational(1, 2));
        } else {
            t.set_probability(pair, {Color::Red, Color::Red}, Rational(1, 8));
            t.set_probability(pair, {Color::Green, Color::Green}, Rational(1, 8));
            t.set_probability(pair, {Color::Red, Color::Green}, Rational(3, 8));
            t.set_probability(pair, {Color::Green, Color::Red}, Rational(3, 8));
        }
    }
    t.validate_rows();
    return t;
}

JointSampler::JointSampler(const JointTable& table) {
    table.validate_rows();
    samplers_.reserve(kPairCount);
    for (int p = 0; p < kPairCount; ++p) {
        samplers_.emplace_back(std::span<const Rational>(table.row(SettingPair::from_index(p))));
    }
}

OutcomePair JointSampler::sample(SettingPair p, RandomStream& rng) const {
    return OutcomePair::from_index(static_cast<int>(samplers_[p.index()].sample(rng)));
}

OutcomePair sample_reference(const JointTable& table, SettingPair p, RandomStream& rng) {
    const RationalSampler sampler{std::span<const Rational>(table.row(p))};
    return OutcomePair::from_index(static_cast<int>(sampler.sample(rng)));
}

JointTable joint_table_of(const InstructionSet& set) {
    JointTable t;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        t.set_probability(pair, {set.at(pair.a), set.at(pair.b)}, Rational(1));
    }
    return t;
}

JointTable joint_table_of(const MixtureWeights& weights) {
    validate_mixture(weights);
    JointTable t;
    for (int i = 0; i < kInstructionSetCount; ++i) {
        if (weights[i] == 0) continue;
        const InstructionSet set = InstructionSet::from_index(i);
        for (int p = 0; p < kPairCount; ++p) {
            const SettingPair pair = SettingPair::from_index(p);
            const OutcomePair o{set.at(pair.a), set.at(pair.b)};
            t.set_probability(pair, o, t.probability(pair, o) + weights[i]);
        }
    }
    t.validate_rows();
    return t;
}

JointTable joint_table_of(const MicrosettingModel& m) {
    JointTable t;
    for (const TauIndex tau : m.ambient.support()) {
        const Rational& w = m.ambient.weight(tau);
        for (int p = 0; p < kPairCount; ++p) {
            const SettingPair pair = SettingPair::from_index(p);
            const OutcomePair o{microsetting_respond(m, Wing::A, pair.a, tau),
                                microsetting_respond(m, Wing::B, pair.b, tau)};
            t.set_probability(pair, o, t.probability(pair, o) + w);
        }
    }
    t.validate_rows();
    return t;
}

// --------------------------------------------------------- joint models ----

QuantumReferenceModel::QuantumReferenceModel()
    : table_(singlet_joint_table()), sampler_(table_) {}

OutcomePair QuantumReferenceModel::respond_joint(SettingPair pair, RandomStream& rng) const {
    return sampler_.sample(pair, rng);
}

NonlocalControl::NonlocalControl() : table_(singlet_joint_table()) {}

OutcomePair NonlocalControl::outcome_for(SettingPair pair, std::uint64_t u) const {
    // Inverse CDF over the canonical outcome order; all rows have
    // denominator 8, so one draw in [0,8) decides the outcome exactly.
    std::uint64_t cum = 0;
    for (int o = 0; o < kOutcomeCount; ++o) {
        const Rational& p = table_.probability(pair, OutcomePair::from_index(o));
        cum += (numerator(p) * (8 / denominator(p))).convert_to<std::uint64_t>();
        if (u < cum) return OutcomePair::from_index(o);
    }
    return OutcomePair::from_index(kOutcomeCount - 1);
}

OutcomePair NonlocalControl::respond_joint(SettingPair pair, RandomStream& rng) const {
    return outcome_for(pair, rng.uniform_below(8));
}

HiddenState NonlocalControl::prepare_shared(const PrepareContext&, RandomStream& source) const {
    return source.uniform_below(8);
}

Color NonlocalControl::probe(Wing wing, Setting near, Setting far, const HiddenState& state) const {
    const auto u = std::any_cast<std::uint64_t>(state);
    const SettingPair pair = wing == Wing::A ? SettingPair{near, far} : SettingPair{far, near};
    const OutcomePair o = outcome_for(pair, u);
    return wing == Wing::A ? o.a : o.b;
}

OutcomePair nonlocal_control_respond(SettingPair pair, RandomStream& rng) {
    static const NonlocalControl control;
    return control.respond_joint(pair, rng);
}

// ------------------------------------------------------------- adaptive ----

MixtureWeights FeedbackStrategy::next(std::span<const RunRecord> history) const {
    std::uint64_t same = 0;
    for (const RunRecord& r : history) {
        if (r.outcome.is_same()) ++same;
    }
    MixtureWeights w{};
    if (2 * same > history.size()) {
        for (int i = 0; i < kInstructionSetCount; ++i) {
            if (!InstructionSet::from_index(i).is_pure()) w[i] = Rational(1, 6);
        }
    } else {
        for (int i = 0; i < kInstructionSetCount; ++i) w[i] = Rational(1, 8);
    }
    return w;
}

}  // namespace redgreen
