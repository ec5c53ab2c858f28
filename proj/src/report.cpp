#include "redgreen/report.hpp"

#include <fstream>

namespace redgreen {

ReportJson tool_json() {
    ReportJson j;
    j["name"] = kToolName;
    j["version"] = kToolVersion;
    j["report_format"] = kReportFormat;
    return j;
}

ReportJson probability_json(const Probability& p) {
    ReportJson j;
    if (p.is_exact()) {
        j["exact"] = format_rational(p.exact_value());
    } else {
        j["estimate"] = p.estimate_value().value;
        j["sample_size"] = p.estimate_value().sample_size;
    }
    return j;
}

namespace {

ReportJson proportion_json(std::uint64_t successes, std::uint64_t n) {
    ReportJson j;
    j["count"] = successes;
    j["runs"] = n;
    j["fraction"] = format_rational(Rational(BigInt(successes), BigInt(n)));
    const Probability estimate =
        Probability::estimate(static_cast<double>(successes) / static_cast<double>(n), n);
    j["estimate"] = estimate.estimate_value().value;
    const WilsonInterval w = wilson_interval(successes, n, kWilsonZ);
    j["wilson"] = ReportJson{{"z", kWilsonZ}, {"lower", w.lower}, {"upper", w.upper}};
    return j;
}

}  // namespace

ReportJson statistics_json(const TallyTable& t) {
    ReportJson j;
    j["total_runs"] = t.total();
    if (t.total() > 0) {
        j["same_color"] = proportion_json(t.same_color_count(), t.total());
    } else {
        j["same_color"] = nullptr;
    }
    if (t.same_setting_total() > 0) {
        j["feature_i"] = proportion_json(t.same_setting_same_color(), t.same_setting_total());
    } else {
        j["feature_i"] = nullptr;  // undefined, not zero
    }
    auto grid = ReportJson::array();
    for (const Setting a : all_settings()) {
        auto row = ReportJson::array();
        for (const Setting b : all_settings()) {
            const SettingPair pair{a, b};
            const std::uint64_t n = t.pair_total(pair);
            if (n == 0) {
                row.push_back(nullptr);
            } else {
                row.push_back(proportion_json(t.pair_same_count(pair), n));
            }
        }
        grid.push_back(row);
    }
    j["per_pair_same"] = grid;
    return j;
}

ReportJson enumeration_rows_json(const std::array<EnumerationRow, kInstructionSetCount>& rows) {
    auto arr = ReportJson::array();
    for (const EnumerationRow& row : rows) {
        arr.push_back(ReportJson{{"set", row.set.to_string()},
                                 {"same_fraction", format_rational(row.same_fraction)},
                                 {"pure", row.pure}});
    }
    return arr;
}

ReportJson mixture_bound_json(const MixtureBoundCertificate& cert) {
    ReportJson j;
    j["bound"] = format_rational(cert.bound);
    auto fractions = ReportJson::array();
    for (const Rational& f : cert.vertex_fractions) fractions.push_back(format_rational(f));
    j["vertex_fractions"] = fractions;
    auto argmin = ReportJson::array();
    for (const int i : cert.argmin_vertices) argmin.push_back(InstructionSet::from_index(i).to_string());
    j["argmin_vertices"] = argmin;
    j["argument"] =
        "the same-color fraction is linear in the mixture weights, so its minimum over "
        "all mixtures is attained at a vertex; the smallest vertex value is the bound";
    return j;
}

ReportJson incompatibility_json(const IncompatibilityCertificate& cert) {
    ReportJson j;
    j["bound"] = format_rational(cert.bound);
    j["target"] = format_rational(cert.target);
    j["gap"] = format_rational(cert.gap);
    j["conclusion"] =
        "any instruction-set explanation of feature (i) forces a same-color fraction of "
        "at least the bound, while feature (ii) requires exactly the target; the gap is "
        "positive, so no such model reproduces both";
    return j;
}

ReportJson witness_json(const FeatureIWitness& w) {
    ReportJson j;
    j["setting"] = setting_number(w.setting);
    j["tau"] = w.tau;
    j["wing_a_micro"] = w.micro_a;
    j["wing_b_micro"] = w.micro_b;
    j["wing_a_color"] = std::string(1, color_char(w.color_a));
    j["wing_b_color"] = std::string(1, color_char(w.color_b));
    return j;
}

namespace {

const char* verdict_name(CollapseVerdict v) {
    switch (v) {
        case CollapseVerdict::FullyCollapsed: return "fully-collapsed";
        case CollapseVerdict::TwoType: return "two-type";
        case CollapseVerdict::Violation: return "violation";
    }
    return "unknown";
}

ReportJson component_json(const CoexistenceComponent& c) {
    ReportJson j;
    j["wing_a"] = c.wing_a;
    j["wing_b"] = c.wing_b;
    if (c.forced_color) {
        j["color"] = std::string(1, color_char(*c.forced_color));
    } else {
        j["color"] = nullptr;
    }
    if (c.type) j["type"] = *c.type == ComponentType::TypeI ? "I" : "II";
    if (c.conflict) j["conflict"] = witness_json(*c.conflict);
    return j;
}

}  // namespace

ReportJson collapse_json(const CollapseReport& report) {
    ReportJson j;
    j["compliant"] = report.compliant;
    if (report.witness) j["witness"] = witness_json(*report.witness);
    auto settings = ReportJson::array();
    for (const Setting s : all_settings()) {
        const SettingCollapse& sc = report.per_setting[setting_index(s)];
        ReportJson entry;
        entry["setting"] = setting_number(s);
        entry["verdict"] = verdict_name(sc.verdict);
        auto comps = ReportJson::array();
        for (const CoexistenceComponent& c : sc.components) comps.push_back(component_json(c));
        entry["components"] = comps;
        settings.push_back(entry);
    }
    j["per_setting"] = settings;
    if (report.compliant) {
        auto by_tau = ReportJson::array();
        for (const EffectiveSetAtTau& e : report.effective_by_tau) {
            by_tau.push_back(ReportJson{{"tau", e.tau},
                                        {"weight", format_rational(e.weight)},
                                        {"set", e.set.to_string()}});
        }
        j["effective_by_tau"] = by_tau;
        ReportJson dist;
        for (int i = 0; i < kInstructionSetCount; ++i) {
            if (report.effective_distribution[i] != 0) {
                dist[InstructionSet::from_index(i).to_string()] =
                    format_rational(report.effective_distribution[i]);
            }
        }
        j["effective_distribution"] = dist;
        j["tau_independent"] = report.tau_independent;
    }
    return j;
}

std::string dump_report(const ReportJson& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const ReportJson& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file: " + path.string());
    out << dump_report(doc);
    if (!out) throw IoError("failed while writing report file: " + path.string());
}

}  // namespace redgreen
