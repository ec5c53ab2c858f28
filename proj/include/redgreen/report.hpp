#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "redgreen/core.hpp"
#include "redgreen/verifier.hpp"

namespace redgreen {

// JSON report schema. Exact values are serialized as "p/q" strings,
// estimates as decimals next to the counts that produced them; reports
// carry no wall-clock data, so identical inputs give byte-identical output.

using ReportJson = nlohmann::ordered_json;

inline constexpr const char* kToolName = "redgreen";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormat = 1;
inline constexpr double kWilsonZ = 1.96;  // 95% score interval

ReportJson tool_json();

// {"exact": "p/q"} or {"estimate": v, "sample_size": n}.
ReportJson probability_json(const Probability& p);

// Counts, overall same-color fraction with its Wilson interval, feature-(i)
// conditional, and the 3x3 per-pair grid (null where a pair never ran).
ReportJson statistics_json(const TallyTable& t);

ReportJson enumeration_rows_json(const std::array<EnumerationRow, kInstructionSetCount>& rows);
ReportJson mixture_bound_json(const MixtureBoundCertificate& cert);
ReportJson incompatibility_json(const IncompatibilityCertificate& cert);

ReportJson witness_json(const FeatureIWitness& w);
ReportJson collapse_json(const CollapseReport& report);

// Serializes with a trailing newline; throws IoError on failure.
void write_json_file(const std::filesystem::path& path, const ReportJson& doc);

std::string dump_report(const ReportJson& doc);

}  // namespace redgreen
