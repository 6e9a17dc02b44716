#pragma once

#include "hyperctx/behavior.hpp"
#include "hyperctx/device.hpp"
#include "hyperctx/polytope.hpp"
#include "hyperctx/realization.hpp"
#include "hyperctx/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hyperctx {

// All documents carry a "schema" field, written always, optional on input but
// rejected when it names a different schema. Parsing is strict: unknown
// fields raise Error("UnknownField"), structural problems
// Error("MalformedDocument"), schema clashes Error("SchemaMismatch"); the
// domain constructors contribute their own ValidationErrors. Probabilities
// travel as "num/den" strings, never floats.

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

// Context tables keyed by context name, entries keyed by the joint outcome's
// labels joined with ','. Every entry is explicit.
nlohmann::json behavior_to_json(const Behavior& behavior);
Behavior behavior_from_json(const nlohmann::json& doc);

// Sparse: only nonzero assignments are written, absent assignments are zero.
nlohmann::json distribution_to_json(const GlobalDistribution& distribution);
GlobalDistribution distribution_from_json(const nlohmann::json& doc);

nlohmann::json inequality_to_json(const NcInequality& inequality);
NcInequality inequality_from_json(const nlohmann::json& doc);

nlohmann::json decision_to_json(const NcDecision& decision);

nlohmann::json classical_to_json(const ClassicalRealization& realization);
ClassicalRealization classical_from_json(const nlohmann::json& doc);

// Matrices row-major: arrays of rows, complex entries as [re, im] pairs.
nlohmann::json quantum_to_json(const QuantumRealization& realization);
QuantumRealization quantum_from_json(const nlohmann::json& doc);

nlohmann::json device_to_json(const DeviceConfig& config);
DeviceConfig device_from_json(const nlohmann::json& doc);

// One JSON-lines record per trial; no schema field on individual lines.
nlohmann::json trial_to_json(const TrialRecord& record);
TrialRecord trial_from_json(const nlohmann::json& doc);

nlohmann::json counts_to_json(const EmpiricalBehavior& empirical);
nlohmann::json analysis_to_json(const AnalysisReport& report);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    std::uint64_t trials_per_press = 0;
    std::string version;
    std::string timestamp;

    bool operator==(const RunManifest& other) const = default;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& doc);

}  // namespace hyperctx
