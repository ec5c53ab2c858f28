#include "redgreen/records.hpp"

#include <charconv>
#include <fstream>

namespace redgreen {

std::string format_record(const RunRecord& r) {
    std::string out = std::to_string(r.trial);
    out += ',';
    out += std::to_string(setting_number(r.pair.a));
    out += ',';
    out += std::to_string(setting_number(r.pair.b));
    out += ',';
    out += color_char(r.outcome.a);
    out += ',';
    out += color_char(r.outcome.b);
    return out;
}

namespace {

[[noreturn]] void bad_line(std::size_t line_number, const std::string& what) {
    throw ValidationError("records line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

RunRecord parse_record_line(const std::string& line, std::size_t line_number) {
    std::array<std::string, 5> fields;
    std::size_t field = 0;
    for (const char c : line) {
        if (c == ',') {
            if (++field >= fields.size()) bad_line(line_number, "too many fields");
        } else {
            fields[field] += c;
        }
    }
    if (field != 4) bad_line(line_number, "expected 5 comma-separated fields: trial,a,b,ca,cb");

    RunRecord r{};
    const auto [ptr, ec] =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), r.trial);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
        bad_line(line_number, "bad trial index '" + fields[0] + "'");
    }
    try {
        r.pair.a = setting_from_number(fields[1].size() == 1 ? fields[1][0] - '0' : -1);
        r.pair.b = setting_from_number(fields[2].size() == 1 ? fields[2][0] - '0' : -1);
        if (fields[3].size() != 1 || fields[4].size() != 1) {
            throw ValidationError("colors must be single letters");
        }
        r.outcome.a = color_from_char(fields[3][0]);
        r.outcome.b = color_from_char(fields[4][0]);
    } catch (const ValidationError& e) {
        bad_line(line_number, e.what());
    }
    return r;
}

void write_records(const std::filesystem::path& path, std::span<const RunRecord> records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write records file: " + path.string());
    for (const RunRecord& r : records) out << format_record(r) << '\n';
    if (!out) throw IoError("failed while writing records file: " + path.string());
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read records file: " + path.string());
    std::vector<RunRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        records.push_back(parse_record_line(line, line_number));
    }
    return records;
}

}  // namespace redgreen
