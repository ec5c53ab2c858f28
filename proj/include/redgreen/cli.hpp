#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "redgreen/referee.hpp"

namespace redgreen {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;  // bad document, bad argument, empty data
inline constexpr int kExitViolation = 3;   // feature-(i) compliance violation found
inline constexpr int kExitIo = 4;

struct SimulateOptions {
    std::string model_path;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::uint32_t shards = 1;
    AmbientMode ambient_mode = AmbientMode::PerRun;
    std::optional<std::string> out_path;      // report JSON; stdout when absent
    std::optional<std::string> records_path;  // raw records, one per line
};

struct VerifyOptions {
    std::string model_path;
    std::optional<std::string> out_path;
};

struct EnumerateOptions {
    std::optional<std::string> out_path;
};

struct AnalyzeOptions {
    std::string records_path;
    std::optional<std::string> out_path;
};

int cmd_simulate(const SimulateOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_enumerate(const EnumerateOptions& opt);
int cmd_analyze(const AnalyzeOptions& opt);

}  // namespace redgreen
