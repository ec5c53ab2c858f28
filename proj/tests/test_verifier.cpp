#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "redgreen/referee.hpp"
#include "redgreen/verifier.hpp"

using namespace redgreen;

namespace {

CompliantModelParams random_params(RandomStream& rng) {
    return {.max_micro_per_setting = 1 + static_cast<std::uint32_t>(rng.uniform_below(4)),
            .ambient_size = 1 + static_cast<std::uint32_t>(rng.uniform_below(6)),
            .max_weight = 1 + static_cast<std::uint32_t>(rng.uniform_below(8)),
            .stationary = rng.uniform_below(4) == 0,
            .full_support = false};
}

// Direct (tau, setting-pair) enumeration of the same-color mass; the second
// route against the effective-set computation.
Rational same_fraction_by_enumeration(const MicrosettingModel& m) {
    Rational sum = 0;
    for (const TauIndex tau : m.ambient.support()) {
        for (int p = 0; p < kPairCount; ++p) {
            const SettingPair pair = SettingPair::from_index(p);
            if (microsetting_respond(m, Wing::A, pair.a, tau) ==
                microsetting_respond(m, Wing::B, pair.b, tau)) {
                sum += m.ambient.weight(tau) * Rational(1, 9);
            }
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("enumeration: GGR sits at 5/9, RRR at 1, six mixed rows in total") {
    const auto rows = enumerate_instruction_sets();
    int at_bound = 0;
    int at_one = 0;
    for (const EnumerationRow& row : rows) {
        CHECK(row.pure == row.set.is_pure());
        CHECK(row.same_fraction == (row.pure ? Rational(1) : Rational(5, 9)));
        if (row.same_fraction == Rational(5, 9)) ++at_bound;
        if (row.same_fraction == Rational(1)) ++at_one;
    }
    CHECK(at_bound == 6);
    CHECK(at_one == 2);
    CHECK(rows[InstructionSet::from_string("GGR").index()].same_fraction == Rational(5, 9));
    CHECK(rows[InstructionSet::from_string("RRR").index()].same_fraction == Rational(1));
    // canonical order is stable
    CHECK(rows[0].set.to_string() == "RRR");
    CHECK(rows[7].set.to_string() == "GGG");
}

TEST_CASE("GGR agrees exactly on the five pairs 11, 22, 33, 12, 21") {
    const InstructionSet ggr = InstructionSet::from_string("GGR");
    std::set<int> agreeing;
    for (int p = 0; p < kPairCount; ++p) {
        const SettingPair pair = SettingPair::from_index(p);
        if (ggr.at(pair.a) == ggr.at(pair.b)) agreeing.insert(p);
    }
    const std::set<int> expected{
        SettingPair{Setting::One, Setting::One}.index(),
        SettingPair{Setting::Two, Setting::Two}.index(),
        SettingPair{Setting::Three, Setting::Three}.index(),
        SettingPair{Setting::One, Setting::Two}.index(),
        SettingPair{Setting::Two, Setting::One}.index()};
    CHECK(agreeing == expected);
}

TEST_CASE("the mixture bound is exactly 5/9, attained at every mixed vertex") {
    const MixtureBoundCertificate cert = min_same_fraction_over_mixtures();
    CHECK(cert.bound == Rational(5, 9));
    CHECK(cert.argmin_vertices.size() == 6);
    for (const int i : cert.argmin_vertices) {
        CHECK_FALSE(InstructionSet::from_index(i).is_pure());
    }
}

TEST_CASE("point-mass GGR evaluates to 5/9 and the uniform mixture to 2/3") {
    CHECK(mixture_same_fraction(point_mass(InstructionSet::from_string("GGR"))) ==
          Rational(5, 9));
    MixtureWeights uniform{};
    for (auto& w : uniform) w = Rational(1, 8);
    // (6 * 5/9 + 2 * 1) / 8 = 2/3
    CHECK(mixture_same_fraction(uniform) == Rational(2, 3));
}

TEST_CASE("1000 random mixtures all evaluate to at least 5/9") {
    RandomStream rng(271828, 0, Role::Source);
    for (int i = 0; i < 1000; ++i) {
        std::array<std::uint64_t, kInstructionSetCount> raw{};
        std::uint64_t sum = 0;
        while (sum == 0) {
            for (auto& r : raw) {
                r = rng.uniform_below(1000);
                sum += r;
            }
        }
        MixtureWeights w{};
        for (int k = 0; k < kInstructionSetCount; ++k) {
            w[k] = Rational(BigInt(raw[k]), BigInt(sum));
        }
        const Rational f = mixture_same_fraction(w);
        CHECK(f >= Rational(5, 9));
        CHECK(f <= Rational(1));
    }
}

TEST_CASE("mixture evaluation rejects non-distributions") {
    MixtureWeights w{};
    w[0] = Rational(1, 2);
    CHECK_THROWS_AS(mixture_same_fraction(w), ValidationError);
}

TEST_CASE("the incompatibility certificate states 5/9 versus 1/2 with gap 1/18") {
    const IncompatibilityCertificate cert = incompatibility_certificate();
    CHECK(cert.bound == Rational(5, 9));
    CHECK(cert.target == Rational(1, 2));
    CHECK(cert.gap == Rational(1, 18));
    CHECK(cert.gap == cert.bound - cert.target);
    CHECK(cert.gap > 0);
}

// ----------------------------------------------- feature (i) compliance ----

TEST_CASE("generated compliant models pass the exact feature-(i) check") {
    RandomStream rng(31415, 0, Role::Source);
    for (int i = 0; i < 200; ++i) {
        const MicrosettingModel m = generate_compliant_model(random_params(rng), rng);
        CHECK_FALSE(check_feature_i_exact(m).has_value());
    }
}

TEST_CASE("a planted mismatch at setting 2 is reported as witness (2, tau)") {
    const MicrosettingModel m = fixtures::planted_violation_model();
    const auto witness = check_feature_i_exact(m);
    REQUIRE(witness.has_value());
    CHECK(witness->setting == Setting::Two);
    CHECK(witness->tau == 0);
    CHECK(witness->color_a != witness->color_b);
    CHECK(witness->micro_a == 2);
    CHECK(witness->micro_b == 2);
}

TEST_CASE("zero-weight tau are outside the support and ignored") {
    MicrosettingModel m = fixtures::worked_example_model(true);
    // Shift all weight to tau 0 and plant a mismatch that only tau 1 hits:
    // wing B's type-I microsetting for setting 1 is repainted, and tau 1 is
    // the only condition selecting it.
    m.ambient = AmbientDistribution({Rational(1), Rational(0)});
    m.color_map[wing_index(Wing::B)][0] = Color::Red;
    m.validate();
    CHECK_FALSE(check_feature_i_exact(m).has_value());
    // Restoring weight to tau 1 exposes the violation.
    MicrosettingModel exposed = m;
    exposed.ambient = AmbientDistribution({Rational(1, 2), Rational(1, 2)});
    const auto witness = check_feature_i_exact(exposed);
    REQUIRE(witness.has_value());
    CHECK(witness->tau == 1);
}

// ------------------------------------------------- coexistence analysis ----

TEST_CASE("full bipartite support collapses each setting to one component") {
    const CoexistencePartition partition = coexistence_partition(fixtures::full_support_model());
    for (const Setting s : all_settings()) {
        const auto& components = partition.per_setting[setting_index(s)];
        REQUIRE(components.size() == 1);
        CHECK(components.front().wing_a.size() == 2);
        CHECK(components.front().wing_b.size() == 2);
        REQUIRE(components.front().forced_color.has_value());
        CHECK(components.front().type == ComponentType::TypeI);
    }
}

TEST_CASE("two disjoint tau blocks split every setting into types I and II") {
    const CoexistencePartition partition = coexistence_partition(fixtures::two_block_model());
    for (const Setting s : all_settings()) {
        const auto& components = partition.per_setting[setting_index(s)];
        REQUIRE(components.size() == 2);
        CHECK(components[0].type == ComponentType::TypeI);
        CHECK(components[1].type == ComponentType::TypeII);
        REQUIRE(components[0].forced_color.has_value());
        REQUIRE(components[1].forced_color.has_value());
        CHECK(*components[0].forced_color == opposite(*components[1].forced_color));
    }
}

TEST_CASE("a single microsetting pair forms one component, called type I") {
    const CoexistencePartition partition =
        coexistence_partition(fixtures::singleton_model(InstructionSet::from_string("RGG")));
    for (const Setting s : all_settings()) {
        const auto& components = partition.per_setting[setting_index(s)];
        REQUIRE(components.size() == 1);
        CHECK(components.front().wing_a.size() == 1);
        CHECK(components.front().wing_b.size() == 1);
        CHECK(components.front().type == ComponentType::TypeI);
    }
}

TEST_CASE("components cover exactly the microsettings reachable from the support") {
    MicrosettingModel m = fixtures::two_block_model();
    // Remove tau 1 from the support: the type-II microsettings become unreachable.
    m.ambient = AmbientDistribution({Rational(1), Rational(0)});
    m.validate();
    const CoexistencePartition partition = coexistence_partition(m);
    for (const Setting s : all_settings()) {
        const auto& components = partition.per_setting[setting_index(s)];
        REQUIRE(components.size() == 1);
        CHECK(components.front().wing_a == std::vector<MicroId>{
                                               static_cast<MicroId>(2 * setting_index(s))});
    }
}

namespace {

// Component count over the full declared node universe: partition
// components plus a singleton for every declared microsetting the support
// never reaches. On this fixed universe, adding an edge can only merge.
std::size_t universe_components(const MicrosettingModel& m, const CoexistencePartition& p,
                                Setting s) {
    std::size_t covered = 0;
    for (const CoexistenceComponent& comp : p.per_setting[setting_index(s)]) {
        covered += comp.wing_a.size() + comp.wing_b.size();
    }
    const std::size_t declared = m.micro_sets[0][setting_index(s)].size() +
                                 m.micro_sets[1][setting_index(s)].size();
    return p.per_setting[setting_index(s)].size() + (declared - covered);
}

}  // namespace

TEST_CASE("adding tau edges never increases the number of components") {
    RandomStream rng(5555, 0, Role::Source);
    for (int i = 0; i < 60; ++i) {
        MicrosettingModel m = generate_compliant_model(random_params(rng), rng);
        const MicrosettingModel original = m;
        const CoexistencePartition before = coexistence_partition(m);

        // Extend the domain with one fresh tau selecting uniformly at random.
        const std::size_t domain = m.ambient.size();
        std::vector<Rational> weights;
        for (std::size_t t = 0; t < domain; ++t) {
            weights.push_back(m.ambient.weight(static_cast<TauIndex>(t)) * Rational(1, 2));
        }
        weights.push_back(Rational(1, 2));
        m.ambient = AmbientDistribution(std::move(weights));
        for (const Wing w : {Wing::A, Wing::B}) {
            for (const Setting s : all_settings()) {
                const auto& ids = m.micro_sets[wing_index(w)][setting_index(s)];
                m.select[wing_index(w)][setting_index(s)].push_back(
                    ids[rng.uniform_below(ids.size())]);
            }
        }
        m.stationary = false;  // the random extension need not preserve it
        m.validate();
        const CoexistencePartition after = coexistence_partition(m);
        for (const Setting s : all_settings()) {
            CHECK(universe_components(m, after, s) <= universe_components(original, before, s));
        }
    }
}

// ------------------------------------------------------ collapse report ----

TEST_CASE("full-support compliant models report fully-collapsed everywhere") {
    const CollapseReport report = collapse_analysis(fixtures::full_support_model());
    CHECK(report.compliant);
    CHECK(report.tau_independent);
    for (const Setting s : all_settings()) {
        CHECK(report.per_setting[setting_index(s)].verdict == CollapseVerdict::FullyCollapsed);
    }
    // The per-setting forced colors form the plain instruction set RGR.
    REQUIRE(report.effective_by_tau.size() == 4);
    for (const EffectiveSetAtTau& e : report.effective_by_tau) {
        CHECK(e.set == InstructionSet::from_string("RGR"));
    }
    CHECK(report.effective_distribution[InstructionSet::from_string("RGR").index()] ==
          Rational(1));
}

TEST_CASE("the worked model reports two-type with effective set RGG at tau 0") {
    const CollapseReport report = collapse_analysis(fixtures::worked_example_model());
    CHECK(report.compliant);
    for (const Setting s : all_settings()) {
        // Only one tau: each setting has a single reachable pair, so one
        // component; the two-type structure appears with the second tau.
        CHECK(report.per_setting[setting_index(s)].verdict == CollapseVerdict::FullyCollapsed);
    }
    REQUIRE(report.effective_by_tau.size() == 1);
    CHECK(report.effective_by_tau.front().set == InstructionSet::from_string("RGG"));

    const CollapseReport two_tau = collapse_analysis(fixtures::worked_example_model(true));
    CHECK(two_tau.compliant);
    CHECK_FALSE(two_tau.tau_independent);
    // Settings 1 and 3 switch types across the two tau, so their graphs
    // split into types I and II; setting 2 stays on type I under both tau
    // and keeps a single reachable pair.
    CHECK(two_tau.per_setting[setting_index(Setting::One)].verdict == CollapseVerdict::TwoType);
    CHECK(two_tau.per_setting[setting_index(Setting::Three)].verdict == CollapseVerdict::TwoType);
    CHECK(two_tau.per_setting[setting_index(Setting::Two)].verdict ==
          CollapseVerdict::FullyCollapsed);
    REQUIRE(two_tau.effective_by_tau.size() == 2);
    CHECK(two_tau.effective_by_tau[0].set == InstructionSet::from_string("RGG"));
    CHECK(two_tau.effective_by_tau[1].set == InstructionSet::from_string("GGR"));
    CHECK(two_tau.effective_distribution[InstructionSet::from_string("RGG").index()] ==
          Rational(2, 3));
}

TEST_CASE("a planted violation yields a violation verdict carrying the witness") {
    const CollapseReport report = collapse_analysis(fixtures::planted_violation_model());
    CHECK_FALSE(report.compliant);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->setting == Setting::Two);
    CHECK(report.per_setting[setting_index(Setting::Two)].verdict == CollapseVerdict::Violation);
    CHECK(report.effective_by_tau.empty());
}

// -------------------------------------------------------- effective sets ----

TEST_CASE("the worked tau gives RGG; the all-type-I tau restores GGR") {
    const MicrosettingModel m = fixtures::worked_example_model(true);
    CHECK(derive_effective_instruction_set(m, 0) == InstructionSet::from_string("RGG"));
    CHECK(derive_effective_instruction_set(m, 1) == InstructionSet::from_string("GGR"));
}

TEST_CASE("effective sets reproduce the microsetting responses at every setting") {
    RandomStream rng(112233, 0, Role::Source);
    for (int i = 0; i < 100; ++i) {
        const MicrosettingModel m = generate_compliant_model(random_params(rng), rng);
        for (const TauIndex tau : m.ambient.support()) {
            const InstructionSet eff = derive_effective_instruction_set(m, tau);
            for (const Setting s : all_settings()) {
                CHECK(eff.at(s) == microsetting_respond(m, Wing::A, s, tau));
                CHECK(eff.at(s) == microsetting_respond(m, Wing::B, s, tau));
            }
        }
    }
}

TEST_CASE("deriving an effective set from a non-compliant model is refused") {
    const MicrosettingModel m = fixtures::planted_violation_model();
    CHECK_THROWS_AS(derive_effective_instruction_set(m, 0), ComplianceError);
    try {
        derive_effective_instruction_set(m, 0);
    } catch (const ComplianceError& e) {
        CHECK(e.witness.setting == Setting::Two);
    }
    CHECK_THROWS_AS(exact_same_fraction(m), ComplianceError);
    CHECK_THROWS_AS(effective_set_distribution(m), ComplianceError);
}

TEST_CASE("tau outside the support has no effective set") {
    MicrosettingModel m = fixtures::worked_example_model(true);
    m.ambient = AmbientDistribution({Rational(1), Rational(0)});
    CHECK_THROWS_AS(derive_effective_instruction_set(m, 1), ValidationError);
}

// -------------------------------------------------- exact same fraction ----

TEST_CASE("a model whose every effective set is pure reaches exactly 1") {
    const MicrosettingModel m = fixtures::singleton_model(InstructionSet::from_string("GGG"));
    CHECK(exact_same_fraction(m) == Rational(1));
}

TEST_CASE("the worked single-tau model sits at exactly 5/9") {
    CHECK(exact_same_fraction(fixtures::worked_example_model()) == Rational(5, 9));
}

TEST_CASE("exact fraction equals direct enumeration and recombines the distribution") {
    RandomStream rng(999, 0, Role::Source);
    for (int i = 0; i < 150; ++i) {
        const MicrosettingModel m = generate_compliant_model(random_params(rng), rng);
        const Rational exact = exact_same_fraction(m);
        CHECK(exact >= Rational(5, 9));
        CHECK(exact == same_fraction_by_enumeration(m));
        CHECK(exact == mixture_same_fraction(effective_set_distribution(m)));
        // And the joint-table route agrees as well.
        CHECK(exact == joint_table_of(m).overall_same_mass());
    }
}

TEST_CASE("exact fractions match Monte Carlo estimates within 4 sigma") {
    RandomStream rng(424242, 0, Role::Source);
    for (int i = 0; i < 500; ++i) {
        const MicrosettingModel m = generate_compliant_model(random_params(rng), rng);
        const Rational exact = exact_same_fraction(m);
        REQUIRE(exact >= Rational(5, 9));

        const MicrosettingLocalModel model(m);
        const std::uint64_t trials = 2000;
        const TallyTable t = tally(run_experiment(
            model, {.trials = trials, .seed = 1000 + static_cast<std::uint64_t>(i)}));
        const double p = to_double(exact);
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
        const double estimate = to_double(same_color_fraction(t).exact_value());
        CAPTURE(i);
        CHECK(std::abs(estimate - p) <= 4.0 * sigma + 1e-9);
    }
}

TEST_CASE("fully collapsed support implies a tau-independent effective set") {
    RandomStream rng(777, 0, Role::Source);
    for (int i = 0; i < 60; ++i) {
        const CompliantModelParams params{
            .max_micro_per_setting = 1 + static_cast<std::uint32_t>(rng.uniform_below(3)),
            .ambient_size = 1 + static_cast<std::uint32_t>(rng.uniform_below(4)),
            .max_weight = 4,
            .full_support = true};
        const MicrosettingModel m = generate_compliant_model(params, rng);
        const CollapseReport report = collapse_analysis(m);
        CHECK(report.compliant);
        for (const Setting s : all_settings()) {
            CHECK(report.per_setting[setting_index(s)].verdict ==
                  CollapseVerdict::FullyCollapsed);
        }
        CHECK(report.tau_independent);
    }
}
