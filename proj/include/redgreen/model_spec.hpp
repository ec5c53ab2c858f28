#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "redgreen/models.hpp"

namespace redgreen {

// Declarative model documents. One JSON object per model, dispatched on
// "kind"; every payload is validated before anything runs, and exact values
// travel as "p/q" strings or integers — never as floats.
//
//   {"kind": "instruction-set", "set": "GGR"}
//   {"kind": "instruction-mixture", "mixture": [w0, ..., w7]}   (canonical order RRR..GGG)
//   {"kind": "quantum-reference"}
//   {"kind": "nonlocal-control"}
//   {"kind": "adaptive", "strategy": "constant"|"parity"|"feedback", ...}
//   {"kind": "microsetting", "ambient": [...], "stationary": bool, "wings": {"A": {...}, "B": {...}}}
//
// Full schema in docs/model-spec.md.

enum class ModelKind {
    QuantumReference,
    InstructionSet,
    InstructionMixture,
    Adaptive,
    Microsetting,
    NonlocalControl,
};

std::string kind_name(ModelKind kind);
ModelKind kind_from_name(const std::string& name);  // throws ValidationError

struct AdaptivePayload {
    std::string strategy;                  // "constant", "parity", "feedback"
    std::optional<InstructionSet> set;     // constant
    std::optional<InstructionSet> even;    // parity
    std::optional<InstructionSet> odd;     // parity
};

struct ModelSpec {
    ModelKind kind = ModelKind::InstructionSet;
    std::optional<InstructionSet> set;
    std::optional<MixtureWeights> mixture;
    std::optional<MicrosettingModel> microsetting;
    std::optional<AdaptivePayload> adaptive;

    bool is_local() const {
        return kind == ModelKind::InstructionSet || kind == ModelKind::InstructionMixture ||
               kind == ModelKind::Microsetting;
    }
    bool is_joint() const {
        return kind == ModelKind::QuantumReference || kind == ModelKind::NonlocalControl;
    }
    bool is_adaptive() const { return kind == ModelKind::Adaptive; }
};

// Throws ValidationError naming the JSON path of the first failure.
ModelSpec parse_model_spec(const nlohmann::json& doc);

// Reads and parses; IoError if the file cannot be read, ValidationError if
// it is not valid JSON or not a valid model document.
ModelSpec load_model_spec(const std::filesystem::path& path);

// Canonical document for a parsed spec; parse(serialize(s)) builds a model
// with identical behavior (serialization is exact).
nlohmann::ordered_json serialize_model_spec(const ModelSpec& spec);

std::unique_ptr<LocalModel> build_local_model(const ModelSpec& spec);
std::unique_ptr<JointModel> build_joint_model(const ModelSpec& spec);
std::unique_ptr<AdaptiveStrategy> build_adaptive_strategy(const ModelSpec& spec);

}  // namespace redgreen
