#include "redgreen/verifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace redgreen {

Rational instruction_set_same_fraction(const InstructionSet& set) {
    int agree = 0;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (set.at(pair.a) == set.at(pair.b)) ++agree;
    }
    return Rational(agree, kPairCount);
}

std::array<EnumerationRow, kInstructionSetCount> enumerate_instruction_sets() {
    std::array<EnumerationRow, kInstructionSetCount> rows{};
    for (int i = 0; i < kInstructionSetCount; ++i) {
        const InstructionSet set = InstructionSet::from_index(i);
        rows[i] = EnumerationRow{set, instruction_set_same_fraction(set), set.is_pure()};
    }
    return rows;
}

Rational mixture_same_fraction(const MixtureWeights& weights) {
    validate_mixture(weights);
    Rational sum = 0;
    for (int i = 0; i < kInstructionSetCount; ++i) {
        if (weights[i] != 0) {
            sum += weights[i] * instruction_set_same_fraction(InstructionSet::from_index(i));
        }
    }
    return sum;
}

MixtureBoundCertificate min_same_fraction_over_mixtures() {
    MixtureBoundCertificate cert;
    const auto rows = enumerate_instruction_sets();
    cert.bound = rows[0].same_fraction;
    for (int i = 0; i < kInstructionSetCount; ++i) {
        cert.vertex_fractions[i] = rows[i].same_fraction;
        cert.bound = std::min(cert.bound, rows[i].same_fraction);
    }
    for (int i = 0; i < kInstructionSetCount; ++i) {
        if (rows[i].same_fraction == cert.bound) cert.argmin_vertices.push_back(i);
    }
    return cert;
}

IncompatibilityCertificate incompatibility_certificate() {
    IncompatibilityCertificate cert;
    cert.rows = enumerate_instruction_sets();
    cert.bound = min_same_fraction_over_mixtures().bound;
    cert.target = singlet_joint_table().overall_same_mass();
    cert.gap = cert.bound - cert.target;
    return cert;
}

// ----------------------------------------------- microsetting analysis ----

std::optional<FeatureIWitness> check_feature_i_exact(const MicrosettingModel& m) {
    m.validate();
    for (const Setting s : all_settings()) {
        for (const TauIndex tau : m.ambient.support()) {
            const MicroId ma = m.selected(Wing::A, s, tau);
            const MicroId mb = m.selected(Wing::B, s, tau);
            const Color ca = m.color_of(Wing::A, ma);
            const Color cb = m.color_of(Wing::B, mb);
            if (ca != cb) return FeatureIWitness{s, tau, ma, mb, ca, cb};
        }
    }
    return std::nullopt;
}

namespace {

// Union-find over the nodes of one setting's coexistence graph. Wing-A and
// wing-B microsettings are kept in disjoint key spaces.
class UnionFind {
public:
    int find(int x) {
        while (parent_.size() <= static_cast<std::size_t>(x)) {
            parent_.push_back(static_cast<int>(parent_.size()));
        }
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

std::vector<CoexistenceComponent> partition_setting(const MicrosettingModel& m, Setting s) {
    // Dense node keys for the microsettings reachable from the support.
    std::map<MicroId, int> a_key, b_key;
    std::vector<std::pair<Wing, MicroId>> nodes;
    const auto key_of = [&](Wing w, MicroId id) {
        auto& keys = w == Wing::A ? a_key : b_key;
        const auto it = keys.find(id);
        if (it != keys.end()) return it->second;
        const int k = static_cast<int>(nodes.size());
        keys.emplace(id, k);
        nodes.emplace_back(w, id);
        return k;
    };

    UnionFind uf;
    for (const TauIndex tau : m.ambient.support()) {
        const int ka = key_of(Wing::A, m.selected(Wing::A, s, tau));
        const int kb = key_of(Wing::B, m.selected(Wing::B, s, tau));
        uf.unite(ka, kb);
    }

    std::map<int, CoexistenceComponent> by_root;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const int root = uf.find(static_cast<int>(k));
        auto& comp = by_root[root];
        const auto [wing, id] = nodes[k];
        (wing == Wing::A ? comp.wing_a : comp.wing_b).push_back(id);
    }

    std::vector<CoexistenceComponent> components;
    for (auto& [root, comp] : by_root) {
        (void)root;
        std::sort(comp.wing_a.begin(), comp.wing_a.end());
        std::sort(comp.wing_b.begin(), comp.wing_b.end());
        components.push_back(std::move(comp));
    }
    // Every edge has a wing-A endpoint, so every component has one.
    std::sort(components.begin(), components.end(),
              [](const CoexistenceComponent& x, const CoexistenceComponent& y) {
                  return x.wing_a.front() < y.wing_a.front();
              });

    // Forced color or conflict. If any edge inside a component joins two
    // colors, that edge's tau is a direct feature-(i) witness; report the
    // lexicographically first such tau for this setting.
    for (auto& comp : components) {
        std::optional<Color> color;
        bool clash = false;
        for (const MicroId id : comp.wing_a) {
            const Color c = m.color_of(Wing::A, id);
            if (!color) color = c;
            clash = clash || c != *color;
        }
        for (const MicroId id : comp.wing_b) {
            const Color c = m.color_of(Wing::B, id);
            if (!color) color = c;
            clash = clash || c != *color;
        }
        if (!clash) {
            comp.forced_color = color;
            continue;
        }
        for (const TauIndex tau : m.ambient.support()) {
            const MicroId ma = m.selected(Wing::A, s, tau);
            const MicroId mb = m.selected(Wing::B, s, tau);
            const Color ca = m.color_of(Wing::A, ma);
            const Color cb = m.color_of(Wing::B, mb);
            const bool in_comp = std::binary_search(comp.wing_a.begin(), comp.wing_a.end(), ma);
            if (in_comp && ca != cb) {
                comp.conflict = FeatureIWitness{s, tau, ma, mb, ca, cb};
                break;
            }
        }
    }

    // Canonical type labels for conflict-free settings: the class of the
    // component holding the smallest wing-A microsetting is type I.
    const bool setting_clean = std::all_of(components.begin(), components.end(),
                                           [](const CoexistenceComponent& c) { return !c.conflict; });
    if (setting_clean && !components.empty()) {
        const Color type_i_color = *components.front().forced_color;
        for (auto& comp : components) {
            comp.type =
                *comp.forced_color == type_i_color ? ComponentType::TypeI : ComponentType::TypeII;
        }
    }
    return components;
}

InstructionSet effective_set_unchecked(const MicrosettingModel& m, TauIndex tau) {
    return InstructionSet(microsetting_respond(m, Wing::A, Setting::One, tau),
                          microsetting_respond(m, Wing::A, Setting::Two, tau),
                          microsetting_respond(m, Wing::A, Setting::Three, tau));
}

void require_compliant(const MicrosettingModel& m) {
    if (const auto witness = check_feature_i_exact(m)) {
        throw ComplianceError(
            "model violates feature (i) at setting " +
                std::to_string(setting_number(witness->setting)) + ", tau " +
                std::to_string(witness->tau) + "; no effective instruction set exists",
            *witness);
    }
}

}  // namespace

CoexistencePartition coexistence_partition(const MicrosettingModel& m) {
    m.validate();
    CoexistencePartition partition;
    for (const Setting s : all_settings()) {
        partition.per_setting[setting_index(s)] = partition_setting(m, s);
    }
    return partition;
}

CollapseReport collapse_analysis(const MicrosettingModel& m) {
    CollapseReport report;
    report.effective_distribution = MixtureWeights{};
    const CoexistencePartition partition = coexistence_partition(m);
    const auto witness = check_feature_i_exact(m);
    report.compliant = !witness.has_value();
    report.witness = witness;

    for (const Setting s : all_settings()) {
        const auto& components = partition.per_setting[setting_index(s)];
        SettingCollapse sc{CollapseVerdict::FullyCollapsed, components};
        const bool clean = std::all_of(components.begin(), components.end(),
                                       [](const CoexistenceComponent& c) { return !c.conflict; });
        if (!clean) {
            sc.verdict = CollapseVerdict::Violation;
        } else if (components.size() > 1) {
            sc.verdict = CollapseVerdict::TwoType;
        }
        report.per_setting[setting_index(s)] = std::move(sc);
    }

    if (report.compliant) {
        std::optional<InstructionSet> first;
        report.tau_independent = true;
        for (const TauIndex tau : m.ambient.support()) {
            const InstructionSet set = effective_set_unchecked(m, tau);
            report.effective_by_tau.push_back({tau, m.ambient.weight(tau), set});
            report.effective_distribution[set.index()] += m.ambient.weight(tau);
            if (!first) {
                first = set;
            } else if (!(*first == set)) {
                report.tau_independent = false;
            }
        }
    } else {
        report.tau_independent = false;
    }
    return report;
}

InstructionSet derive_effective_instruction_set(const MicrosettingModel& m, TauIndex tau) {
    require_compliant(m);
    if (!m.ambient.in_support(tau)) {
        throw ValidationError("tau " + std::to_string(tau) + " is not in the ambient support");
    }
    return effective_set_unchecked(m, tau);
}

MixtureWeights effective_set_distribution(const MicrosettingModel& m) {
    require_compliant(m);
    MixtureWeights dist{};
    for (const TauIndex tau : m.ambient.support()) {
        dist[effective_set_unchecked(m, tau).index()] += m.ambient.weight(tau);
    }
    return dist;
}

Rational exact_same_fraction(const MicrosettingModel& m) {
    require_compliant(m);
    Rational sum = 0;
    for (const TauIndex tau : m.ambient.support()) {
        sum += m.ambient.weight(tau) *
               instruction_set_same_fraction(effective_set_unchecked(m, tau));
    }
    return sum;
}

}  // namespace redgreen
