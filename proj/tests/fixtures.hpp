#pragma once

// Hand-built microsetting models shared across test suites.
//
// The "worked" model: base set GGR with one type-I and one type-II
// microsetting per wing and setting. Microsetting ids: setting s owns
// 2(s-1) (type I) and 2(s-1)+1 (type II) at both wings; type I flashes the
// base color, type II the opposite. tau 0 demands type II for settings 1
// and 3 and type I for setting 2, so the effective set at tau 0 is RGG.
// The optional second tau demands type I everywhere (effective set GGR).

#include <vector>

#include "redgreen/models.hpp"

namespace redgreen::fixtures {

inline MicrosettingModel worked_example_model(bool with_second_tau = false) {
    const InstructionSet base = InstructionSet::from_string("GGR");
    MicrosettingModel m;
    for (const Wing w : {Wing::A, Wing::B}) {
        for (const Setting s : all_settings()) {
            const MicroId type1 = static_cast<MicroId>(2 * setting_index(s));
            const MicroId type2 = type1 + 1;
            m.micro_sets[wing_index(w)][setting_index(s)] = {type1, type2};
            m.color_map[wing_index(w)][type1] = base.at(s);
            m.color_map[wing_index(w)][type2] = opposite(base.at(s));
            // tau 0: type II for settings 1 and 3, type I for setting 2.
            const MicroId tau0 = s == Setting::Two ? type1 : type2;
            auto& sel = m.select[wing_index(w)][setting_index(s)];
            sel = {tau0};
            if (with_second_tau) sel.push_back(type1);
        }
    }
    m.ambient = with_second_tau
                    ? AmbientDistribution({Rational(2, 3), Rational(1, 3)})
                    : AmbientDistribution();
    m.validate();
    return m;
}

// Worked model with wing B's type-I microsetting for setting 2 repainted,
// so the wings disagree at (setting 2, tau 0).
inline MicrosettingModel planted_violation_model() {
    MicrosettingModel m = worked_example_model();
    m.color_map[wing_index(Wing::B)][2] = opposite(m.color_map[wing_index(Wing::B)][2]);
    m.validate();
    return m;
}

// Two microsettings per wing and setting, all four same-setting pairs
// coexisting across four tau, single color per setting (base RGR).
inline MicrosettingModel full_support_model() {
    const InstructionSet base = InstructionSet::from_string("RGR");
    MicrosettingModel m;
    m.ambient = AmbientDistribution(
        {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
    for (const Wing w : {Wing::A, Wing::B}) {
        for (const Setting s : all_settings()) {
            const MicroId first = static_cast<MicroId>(2 * setting_index(s));
            m.micro_sets[wing_index(w)][setting_index(s)] = {first, first + 1};
            m.color_map[wing_index(w)][first] = base.at(s);
            m.color_map[wing_index(w)][first + 1] = base.at(s);
            auto& sel = m.select[wing_index(w)][setting_index(s)];
            for (TauIndex tau = 0; tau < 4; ++tau) {
                // Wing A walks pairs (0,0),(0,1),(1,0),(1,1) with wing B.
                sel.push_back(w == Wing::A ? first + tau / 2 : first + tau % 2);
            }
        }
    }
    m.validate();
    return m;
}

// Two disjoint tau blocks: block one stays on the type-I pair, block two on
// the type-II pair. Two components per setting.
inline MicrosettingModel two_block_model() {
    const InstructionSet base = InstructionSet::from_string("GRG");
    MicrosettingModel m;
    m.ambient = AmbientDistribution({Rational(1, 2), Rational(1, 2)});
    for (const Wing w : {Wing::A, Wing::B}) {
        for (const Setting s : all_settings()) {
            const MicroId type1 = static_cast<MicroId>(2 * setting_index(s));
            const MicroId type2 = type1 + 1;
            m.micro_sets[wing_index(w)][setting_index(s)] = {type1, type2};
            m.color_map[wing_index(w)][type1] = base.at(s);
            m.color_map[wing_index(w)][type2] = opposite(base.at(s));
            m.select[wing_index(w)][setting_index(s)] = {type1, type2};
        }
    }
    m.validate();
    return m;
}

// One microsetting per wing and setting, one tau: a plain instruction set
// in microsetting clothes.
inline MicrosettingModel singleton_model(const InstructionSet& set) {
    MicrosettingModel m;
    for (const Wing w : {Wing::A, Wing::B}) {
        for (const Setting s : all_settings()) {
            const MicroId id = static_cast<MicroId>(setting_index(s));
            m.micro_sets[wing_index(w)][setting_index(s)] = {id};
            m.color_map[wing_index(w)][id] = set.at(s);
            m.select[wing_index(w)][setting_index(s)] = {id};
        }
    }
    m.validate();
    return m;
}

}  // namespace redgreen::fixtures
