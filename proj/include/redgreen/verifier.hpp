#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "redgreen/core.hpp"
#include "redgreen/models.hpp"

namespace redgreen {

// Everything here is exact rational arithmetic; no floating point enters
// this module.

// ------------------------------------------------------------ the bound ----

struct EnumerationRow {
    InstructionSet set;
    Rational same_fraction;  // 5/9 for the six mixed sets, 1 for RRR and GGG
    bool pure;
};

// Same-color fraction of one instruction set under uniform settings: the
// count of agreeing setting pairs out of 9.
Rational instruction_set_same_fraction(const InstructionSet& set);

// All 8 sets in canonical order with their exact fractions.
std::array<EnumerationRow, kInstructionSetCount> enumerate_instruction_sets();

// Same-color fraction of a mixture: linear in the weights.
Rational mixture_same_fraction(const MixtureWeights& weights);

// The same-color fraction is linear in the mixture weights, so its minimum
// over the simplex is attained at a vertex; the vertex values are the 8
// enumeration rows and their minimum is 5/9.
struct MixtureBoundCertificate {
    Rational bound;                                      // 5/9
    std::array<Rational, kInstructionSetCount> vertex_fractions;
    std::vector<int> argmin_vertices;                    // canonical indices at the bound
};

MixtureBoundCertificate min_same_fraction_over_mixtures();

// The core contradiction, machine-checked: local instruction sets force the
// same-color fraction to at least `bound`, the reference data pins it to
// `target`, and bound - target = gap > 0.
struct IncompatibilityCertificate {
    Rational bound;   // 5/9
    Rational target;  // 1/2
    Rational gap;     // 1/18
    std::array<EnumerationRow, kInstructionSetCount> rows;
};

IncompatibilityCertificate incompatibility_certificate();

// ----------------------------------------------- microsetting analysis ----

struct FeatureIWitness {
    Setting setting;
    TauIndex tau;
    MicroId micro_a;
    MicroId micro_b;
    Color color_a;
    Color color_b;
};

// Thrown by operations whose precondition is a feature-(i)-compliant model.
class ComplianceError : public std::runtime_error {
public:
    ComplianceError(const std::string& msg, FeatureIWitness w)
        : std::runtime_error(msg), witness(w) {}
    FeatureIWitness witness;
};

// nullopt iff for every setting and every tau with positive weight the two
// wings' composed colors agree. Otherwise the first witness in (setting,
// tau) lexicographic order. Zero-weight tau are ignored.
std::optional<FeatureIWitness> check_feature_i_exact(const MicrosettingModel& m);

// Per setting, the connected components of the bipartite graph whose nodes
// are the microsettings reachable from the support and whose edges join the
// two wings' selections under a common tau. A feature-(i)-compliant color
// map is constant on each component; the at-most-two color classes are the
// types, type I being the class of the component holding the smallest
// wing-A microsetting.
enum class ComponentType { TypeI, TypeII };

struct CoexistenceComponent {
    std::vector<MicroId> wing_a;  // sorted
    std::vector<MicroId> wing_b;  // sorted
    std::optional<Color> forced_color;           // set when monochromatic
    std::optional<FeatureIWitness> conflict;     // set when colors clash inside
    std::optional<ComponentType> type;           // set when the setting is conflict-free
};

struct CoexistencePartition {
    // Components per setting, ordered by smallest wing-A microsetting.
    std::array<std::vector<CoexistenceComponent>, 3> per_setting;
};

CoexistencePartition coexistence_partition(const MicrosettingModel& m);

// Per-setting verdicts: a single coexistence component forces one color for
// every reachable microsetting (fully collapsed); several conflict-free
// components split into at most two color classes (two-type); a clash is a
// feature-(i) violation with a concrete witness.
enum class CollapseVerdict { FullyCollapsed, TwoType, Violation };

struct SettingCollapse {
    CollapseVerdict verdict;
    std::vector<CoexistenceComponent> components;
};

struct EffectiveSetAtTau {
    TauIndex tau;
    Rational weight;
    InstructionSet set;
};

struct CollapseReport {
    std::array<SettingCollapse, 3> per_setting;
    bool compliant;
    std::optional<FeatureIWitness> witness;  // first violation when non-compliant

    // Populated only when compliant.
    std::vector<EffectiveSetAtTau> effective_by_tau;  // support, ascending
    MixtureWeights effective_distribution;  // tau-weight mass per canonical set
    bool tau_independent;                   // one effective set across the support
};

CollapseReport collapse_analysis(const MicrosettingModel& m);

// The plain 3-entry set the model reduces to at a fixed tau: both wings
// agree on every setting once feature (i) holds, so g(s) is the composed
// color at either wing. Throws ComplianceError on non-compliant models.
InstructionSet derive_effective_instruction_set(const MicrosettingModel& m, TauIndex tau);

// Ambient-weight mass of each effective set. Throws ComplianceError.
MixtureWeights effective_set_distribution(const MicrosettingModel& m);

// Sum over tau of weight(tau) * same_fraction(effective set at tau); always
// >= 5/9. Throws ComplianceError on non-compliant models.
Rational exact_same_fraction(const MicrosettingModel& m);

}  // namespace redgreen
