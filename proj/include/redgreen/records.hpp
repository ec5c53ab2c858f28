#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "redgreen/core.hpp"

namespace redgreen {

// Newline-delimited run records, one per line: "trial,a,b,ca,cb", e.g.
// "0,1,3,R,G". Settings are 1..3, colors R/G.

std::string format_record(const RunRecord& r);

// Throws ValidationError naming the 1-based line number.
RunRecord parse_record_line(const std::string& line, std::size_t line_number);

void write_records(const std::filesystem::path& path, std::span<const RunRecord> records);

std::vector<RunRecord> read_records(const std::filesystem::path& path);

}  // namespace redgreen
