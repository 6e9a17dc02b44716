#include "hyperctx/json_io.hpp"

#include "hyperctx/rational.hpp"

#include <initializer_list>
#include <string>
#include <unordered_map>
#include <utility>

namespace hyperctx {

namespace {

using nlohmann::json;

void check_schema(const json& doc, const std::string& expected) {
    if (!doc.is_object()) throw Error("MalformedDocument", "expected a JSON object");
    if (doc.contains("schema")) {
        if (!doc.at("schema").is_string() || doc.at("schema").get<std::string>() != expected) {
            throw Error("SchemaMismatch", "expected schema '" + expected + "'");
        }
    }
}

// Strictness: every field must be declared here; "schema" is implicit.
void check_fields(const json& doc, std::initializer_list<const char*> required) {
    for (const char* key : required) {
        if (!doc.contains(key)) {
            throw Error("MalformedDocument", std::string("missing field '") + key + "'");
        }
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() == "schema") continue;
        bool known = false;
        for (const char* key : required) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw Error("UnknownField", "unexpected field '" + it.key() + "'");
    }
}

std::vector<std::string> string_array(const json& node, const std::string& what) {
    if (!node.is_array()) throw Error("MalformedDocument", what + " must be an array of strings");
    std::vector<std::string> result;
    result.reserve(node.size());
    for (const auto& item : node) {
        if (!item.is_string()) throw Error("MalformedDocument", what + " must be an array of strings");
        result.push_back(item.get<std::string>());
    }
    return result;
}

Rational rational_value(const json& node, const std::string& what) {
    if (!node.is_string()) {
        throw Error("MalformedDocument", what + " must be a rational string like \"1/2\"");
    }
    return parse_rational(node.get<std::string>());
}

std::string joint_label(const Scenario& scenario, int context_index, std::size_t rank) {
    const auto& ctx = scenario.context(context_index);
    const auto digits = unrank(rank, static_cast<int>(ctx.size()), scenario.outcome_count());
    std::string label;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (k > 0) label += ",";
        label += scenario.outcome_label(digits[k]);
    }
    return label;
}

std::string assignment_label(const Scenario& scenario, std::size_t rank) {
    const auto digits = unrank(rank, scenario.measurement_count(), scenario.outcome_count());
    std::string label;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (k > 0) label += ",";
        label += scenario.outcome_label(digits[k]);
    }
    return label;
}

// Context tables and coefficient tables share one shape; `what` names the
// value kind in error messages.
json tables_to_json(const Scenario& scenario, const std::vector<std::vector<Rational>>& tables) {
    json result = json::object();
    for (int c = 0; c < scenario.context_count(); ++c) {
        json table = json::object();
        for (std::size_t s = 0; s < tables[c].size(); ++s) {
            table[joint_label(scenario, c, s)] = format_rational(tables[c][s]);
        }
        result[scenario.context_name(c)] = std::move(table);
    }
    return result;
}

std::vector<std::vector<Rational>> tables_from_json(const Scenario& scenario, const json& node,
                                                    const std::string& what) {
    if (!node.is_object()) throw Error("MalformedDocument", what + " must be an object keyed by context");
    std::vector<std::vector<Rational>> tables;
    tables.reserve(scenario.context_count());
    std::size_t consumed = 0;
    for (int c = 0; c < scenario.context_count(); ++c) {
        const std::string name = scenario.context_name(c);
        if (!node.contains(name)) {
            throw Error("MalformedDocument", what + " for context " + name + " is missing");
        }
        const json& table = node.at(name);
        if (!table.is_object()) {
            throw Error("MalformedDocument", what + " for context " + name + " must be an object");
        }
        ++consumed;
        const std::size_t size = scenario.context_table_size(c);
        std::vector<Rational> values;
        values.reserve(size);
        for (std::size_t s = 0; s < size; ++s) {
            const std::string key = joint_label(scenario, c, s);
            if (!table.contains(key)) {
                throw Error("MalformedDocument",
                            what + " for context " + name + " is missing entry '" + key + "'");
            }
            values.push_back(rational_value(table.at(key), what + " entry " + name + "/" + key));
        }
        if (table.size() != size) {
            throw Error("UnknownField", what + " for context " + name + " has unexpected entries");
        }
        tables.push_back(std::move(values));
    }
    if (node.size() != consumed) {
        throw Error("UnknownField", what + " names a context outside the scenario");
    }
    return tables;
}

json matrix_to_json(const Eigen::MatrixXcd& matrix) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            row.push_back(json::array({matrix(r, c).real(), matrix(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& node, const std::string& what) {
    if (!node.is_array() || node.empty()) {
        throw Error("MalformedDocument", what + " must be a non-empty array of rows");
    }
    const std::size_t rows = node.size();
    const std::size_t cols = node.at(0).is_array() ? node.at(0).size() : 0;
    if (cols == 0) throw Error("MalformedDocument", what + " has an empty first row");
    Eigen::MatrixXcd matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = node.at(r);
        if (!row.is_array() || row.size() != cols) {
            throw Error("MalformedDocument", what + " is not rectangular");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const json& cell = row.at(c);
            if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() || !cell.at(1).is_number()) {
                throw Error("MalformedDocument", what + " entries must be [re, im] pairs");
            }
            matrix(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return matrix;
}

}  // namespace

json scenario_to_json(const Scenario& scenario) {
    json contexts = json::array();
    for (int c = 0; c < scenario.context_count(); ++c) {
        json members = json::array();
        for (int m : scenario.context(c)) members.push_back(scenario.measurement_label(m));
        contexts.push_back(std::move(members));
    }
    return json{{"schema", "scenario/v1"},
                {"measurements", scenario.measurements()},
                {"outcomes", scenario.outcomes()},
                {"contexts", std::move(contexts)}};
}

Scenario scenario_from_json(const json& doc) {
    check_schema(doc, "scenario/v1");
    check_fields(doc, {"measurements", "outcomes", "contexts"});
    RawScenario raw;
    raw.measurements = string_array(doc.at("measurements"), "measurements");
    raw.outcomes = string_array(doc.at("outcomes"), "outcomes");
    if (!doc.at("contexts").is_array()) {
        throw Error("MalformedDocument", "contexts must be an array of label arrays");
    }
    for (const auto& ctx : doc.at("contexts")) {
        raw.contexts.push_back(string_array(ctx, "context"));
    }
    return Scenario::validated(raw);
}

json behavior_to_json(const Behavior& behavior) {
    return json{{"schema", "behavior/v1"},
                {"scenario", scenario_to_json(behavior.scenario())},
                {"tables", tables_to_json(behavior.scenario(), behavior.tables())}};
}

Behavior behavior_from_json(const json& doc) {
    check_schema(doc, "behavior/v1");
    check_fields(doc, {"scenario", "tables"});
    Scenario scenario = scenario_from_json(doc.at("scenario"));
    auto tables = tables_from_json(scenario, doc.at("tables"), "table");
    return Behavior(std::move(scenario), std::move(tables));
}

json distribution_to_json(const GlobalDistribution& distribution) {
    json table = json::object();
    const auto& values = distribution.table();
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (values[t] != 0) {
            table[assignment_label(distribution.scenario(), t)] = format_rational(values[t]);
        }
    }
    return json{{"schema", "global-distribution/v1"},
                {"scenario", scenario_to_json(distribution.scenario())},
                {"table", std::move(table)}};
}

GlobalDistribution distribution_from_json(const json& doc) {
    check_schema(doc, "global-distribution/v1");
    check_fields(doc, {"scenario", "table"});
    Scenario scenario = scenario_from_json(doc.at("scenario"));
    const json& table = doc.at("table");
    if (!table.is_object()) {
        throw Error("MalformedDocument", "table must be an object keyed by assignment");
    }
    const std::size_t total = scenario.global_assignment_count(NcOptions{}.max_global_assignments);
    std::unordered_map<std::string, std::size_t> rank_of_label;
    rank_of_label.reserve(total);
    for (std::size_t t = 0; t < total; ++t) rank_of_label.emplace(assignment_label(scenario, t), t);
    std::vector<Rational> values(total, Rational(0));
    for (auto it = table.begin(); it != table.end(); ++it) {
        const auto found = rank_of_label.find(it.key());
        if (found == rank_of_label.end()) {
            throw Error("MalformedDocument", "'" + it.key() + "' is not a global assignment");
        }
        values[found->second] = rational_value(it.value(), "table entry " + it.key());
    }
    return GlobalDistribution(std::move(scenario), std::move(values));
}

json inequality_to_json(const NcInequality& inequality) {
    return json{{"schema", "inequality/v1"},
                {"scenario", scenario_to_json(inequality.scenario())},
                {"coefficients", tables_to_json(inequality.scenario(), inequality.coefficients())},
                {"direction", inequality.direction() == Direction::GreaterEqual ? ">=" : "<="},
                {"bound", format_rational(inequality.bound())}};
}

NcInequality inequality_from_json(const json& doc) {
    check_schema(doc, "inequality/v1");
    check_fields(doc, {"scenario", "coefficients", "direction", "bound"});
    Scenario scenario = scenario_from_json(doc.at("scenario"));
    auto coefficients = tables_from_json(scenario, doc.at("coefficients"), "coefficient");
    const std::string direction = doc.at("direction").is_string() ? doc.at("direction").get<std::string>() : "";
    if (direction != ">=" && direction != "<=") {
        throw Error("MalformedDocument", "direction must be \">=\" or \"<=\"");
    }
    Rational bound = rational_value(doc.at("bound"), "bound");
    return NcInequality(std::move(scenario), std::move(coefficients), std::move(bound),
                        direction == ">=" ? Direction::GreaterEqual : Direction::LessEqual);
}

json decision_to_json(const NcDecision& decision) {
    json doc{{"schema", "decision/v1"},
             {"verdict", decision.verdict == Verdict::Noncontextual ? "noncontextual" : "contextual"}};
    if (decision.witness) doc["witness"] = distribution_to_json(*decision.witness);
    if (decision.certificate) {
        doc["certificate"] = inequality_to_json(*decision.certificate);
        doc["certificate_value"] = format_rational(decision.certificate_value);
    }
    return doc;
}

json classical_to_json(const ClassicalRealization& realization) {
    const auto& scenario = realization.scenario();
    json measure = json::array();
    for (const auto& mu : realization.measure()) measure.push_back(format_rational(mu));
    json responses = json::object();
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        json values = json::array();
        for (int o : realization.responses()[m]) values.push_back(scenario.outcome_label(o));
        responses[scenario.measurement_label(m)] = std::move(values);
    }
    return json{{"schema", "classical-realization/v1"},
                {"scenario", scenario_to_json(scenario)},
                {"states", realization.state_labels()},
                {"measure", std::move(measure)},
                {"responses", std::move(responses)}};
}

ClassicalRealization classical_from_json(const json& doc) {
    check_schema(doc, "classical-realization/v1");
    check_fields(doc, {"scenario", "states", "measure", "responses"});
    Scenario scenario = scenario_from_json(doc.at("scenario"));
    auto states = string_array(doc.at("states"), "states");

    if (!doc.at("measure").is_array()) {
        throw Error("MalformedDocument", "measure must be an array aligned with states");
    }
    std::vector<Rational> measure;
    measure.reserve(doc.at("measure").size());
    for (const auto& item : doc.at("measure")) measure.push_back(rational_value(item, "measure entry"));

    const json& responses_doc = doc.at("responses");
    if (!responses_doc.is_object()) {
        throw Error("MalformedDocument", "responses must be an object keyed by measurement");
    }
    std::vector<std::vector<int>> responses;
    responses.reserve(scenario.measurement_count());
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        const std::string& label = scenario.measurement_label(m);
        if (!responses_doc.contains(label)) {
            throw Error("MalformedDocument", "responses for " + label + " are missing");
        }
        std::vector<int> values;
        for (const auto& outcome : string_array(responses_doc.at(label), "responses for " + label)) {
            const int o = scenario.outcome_index(outcome);
            if (o < 0) throw Error("MalformedDocument", "'" + outcome + "' is not an outcome label");
            values.push_back(o);
        }
        responses.push_back(std::move(values));
    }
    if (responses_doc.size() != static_cast<std::size_t>(scenario.measurement_count())) {
        throw Error("UnknownField", "responses name a measurement outside the scenario");
    }
    return ClassicalRealization(std::move(scenario), std::move(states), std::move(measure),
                                std::move(responses));
}

json quantum_to_json(const QuantumRealization& realization) {
    const auto& scenario = realization.scenario();
    json observables = json::object();
    json projectors = json::object();
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        const std::string& label = scenario.measurement_label(m);
        observables[label] = matrix_to_json(realization.observables()[m]);
        json family = json::object();
        for (int o = 0; o < scenario.outcome_count(); ++o) {
            family[scenario.outcome_label(o)] = matrix_to_json(realization.projectors()[m][o]);
        }
        projectors[label] = std::move(family);
    }
    return json{{"schema", "quantum-realization/v1"},
                {"scenario", scenario_to_json(scenario)},
                {"dimension", realization.dimension()},
                {"rho", matrix_to_json(realization.state())},
                {"observables", std::move(observables)},
                {"projectors", std::move(projectors)}};
}

QuantumRealization quantum_from_json(const json& doc) {
    check_schema(doc, "quantum-realization/v1");
    check_fields(doc, {"scenario", "dimension", "rho", "observables", "projectors"});
    Scenario scenario = scenario_from_json(doc.at("scenario"));
    if (!doc.at("dimension").is_number_integer()) {
        throw Error("MalformedDocument", "dimension must be an integer");
    }
    const int dimension = doc.at("dimension").get<int>();
    Eigen::MatrixXcd rho = matrix_from_json(doc.at("rho"), "rho");

    const json& observables_doc = doc.at("observables");
    const json& projectors_doc = doc.at("projectors");
    if (!observables_doc.is_object() || !projectors_doc.is_object()) {
        throw Error("MalformedDocument", "observables and projectors must be objects keyed by measurement");
    }
    std::vector<Eigen::MatrixXcd> observables;
    std::vector<std::vector<Eigen::MatrixXcd>> projectors;
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        const std::string& label = scenario.measurement_label(m);
        if (!observables_doc.contains(label)) {
            throw Error("MalformedDocument", "observable for " + label + " is missing");
        }
        observables.push_back(matrix_from_json(observables_doc.at(label), "observable " + label));
        if (!projectors_doc.contains(label) || !projectors_doc.at(label).is_object()) {
            throw Error("MalformedDocument", "projectors for " + label + " are missing");
        }
        const json& family_doc = projectors_doc.at(label);
        std::vector<Eigen::MatrixXcd> family;
        for (int o = 0; o < scenario.outcome_count(); ++o) {
            const std::string& outcome = scenario.outcome_label(o);
            if (!family_doc.contains(outcome)) {
                throw Error("MalformedDocument", "projector " + label + "/" + outcome + " is missing");
            }
            family.push_back(matrix_from_json(family_doc.at(outcome), "projector " + label + "/" + outcome));
        }
        if (family_doc.size() != static_cast<std::size_t>(scenario.outcome_count())) {
            throw Error("UnknownField", "projectors for " + label + " name an unknown outcome");
        }
        projectors.push_back(std::move(family));
    }
    if (observables_doc.size() != static_cast<std::size_t>(scenario.measurement_count()) ||
        projectors_doc.size() != static_cast<std::size_t>(scenario.measurement_count())) {
        throw Error("UnknownField", "observables or projectors name an unknown measurement");
    }
    return QuantumRealization(std::move(scenario), dimension, std::move(rho), std::move(observables),
                              std::move(projectors));
}

json device_to_json(const DeviceConfig& config) {
    json sectors = json::array();
    for (const auto& sector : config.sectors) {
        sectors.push_back(json{{"color", sector.color},
                               {"shade", sector.shade == Shade::Dark ? "dark" : "light"}});
    }
    json geometry = json::array();
    for (const auto& entry : config.geometry) {
        geometry.push_back(json{{"axis", entry.axis},
                                {"read_slots", json::array({entry.read_slots[0], entry.read_slots[1]})}});
    }
    return json{{"schema", "device/v1"},
                {"colors", config.colors},
                {"sectors", std::move(sectors)},
                {"geometry", std::move(geometry)},
                {"mode", config.mode == DeviceMode::Contextual ? "contextual" : "overlapped"},
                {"context_selection",
                 config.policy == SelectionPolicy::RandomUniform ? "random-uniform" : "agent-chosen"},
                {"overlapped_side", config.overlapped_side}};
}

DeviceConfig device_from_json(const json& doc) {
    check_schema(doc, "device/v1");
    check_fields(doc, {"colors", "sectors", "geometry", "mode", "context_selection", "overlapped_side"});
    DeviceConfig config;
    if (!doc.at("colors").is_number_integer()) throw Error("MalformedDocument", "colors must be an integer");
    config.colors = doc.at("colors").get<int>();

    if (!doc.at("sectors").is_array()) throw Error("MalformedDocument", "sectors must be an array");
    for (const auto& entry : doc.at("sectors")) {
        check_fields(entry, {"color", "shade"});
        if (!entry.at("color").is_number_integer() || !entry.at("shade").is_string()) {
            throw Error("MalformedDocument", "sector entries are {color: int, shade: string}");
        }
        const std::string shade = entry.at("shade").get<std::string>();
        if (shade != "dark" && shade != "light") {
            throw Error("MalformedDocument", "shade must be \"dark\" or \"light\"");
        }
        config.sectors.push_back(
            {entry.at("color").get<int>(), shade == "dark" ? Shade::Dark : Shade::Light});
    }

    if (!doc.at("geometry").is_array()) throw Error("MalformedDocument", "geometry must be an array");
    for (const auto& entry : doc.at("geometry")) {
        check_fields(entry, {"axis", "read_slots"});
        const json& slots = entry.at("read_slots");
        if (!entry.at("axis").is_number_integer() || !slots.is_array() || slots.size() != 2 ||
            !slots.at(0).is_number_integer() || !slots.at(1).is_number_integer()) {
            throw Error("MalformedDocument", "geometry entries are {axis: int, read_slots: [int, int]}");
        }
        config.geometry.push_back(
            {entry.at("axis").get<int>(), {slots.at(0).get<int>(), slots.at(1).get<int>()}});
    }

    const std::string mode = doc.at("mode").is_string() ? doc.at("mode").get<std::string>() : "";
    if (mode != "contextual" && mode != "overlapped") {
        throw Error("MalformedDocument", "mode must be \"contextual\" or \"overlapped\"");
    }
    config.mode = mode == "contextual" ? DeviceMode::Contextual : DeviceMode::Overlapped;

    const std::string policy =
        doc.at("context_selection").is_string() ? doc.at("context_selection").get<std::string>() : "";
    if (policy != "random-uniform" && policy != "agent-chosen") {
        throw Error("MalformedDocument", "context_selection must be \"random-uniform\" or \"agent-chosen\"");
    }
    config.policy = policy == "random-uniform" ? SelectionPolicy::RandomUniform : SelectionPolicy::AgentChosen;

    if (!doc.at("overlapped_side").is_number_integer()) {
        throw Error("MalformedDocument", "overlapped_side must be an integer");
    }
    config.overlapped_side = doc.at("overlapped_side").get<int>();

    auto issues = validate_device(config);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return config;
}

json trial_to_json(const TrialRecord& record) {
    return json{{"pressed", record.pressed},
                {"mode", record.mode},
                {"measurements", record.measurements},
                {"outcomes", record.outcomes},
                {"rng_seed_path", record.rng_seed_path}};
}

TrialRecord trial_from_json(const json& doc) {
    if (!doc.is_object()) throw Error("MalformedDocument", "expected a JSON object");
    check_fields(doc, {"pressed", "mode", "measurements", "outcomes", "rng_seed_path"});
    TrialRecord record;
    if (!doc.at("pressed").is_string() || !doc.at("mode").is_string() ||
        !doc.at("rng_seed_path").is_string()) {
        throw Error("MalformedDocument", "pressed, mode and rng_seed_path must be strings");
    }
    record.pressed = doc.at("pressed").get<std::string>();
    record.mode = doc.at("mode").get<std::string>();
    if (record.mode != "joint" && record.mode != "single" && record.mode != "sequential") {
        throw Error("MalformedDocument", "mode must be joint, single or sequential");
    }
    record.measurements = string_array(doc.at("measurements"), "measurements");
    record.outcomes = string_array(doc.at("outcomes"), "outcomes");
    if (record.measurements.size() != record.outcomes.size()) {
        throw Error("MalformedDocument", "measurements and outcomes must align");
    }
    record.rng_seed_path = doc.at("rng_seed_path").get<std::string>();
    return record;
}

json counts_to_json(const EmpiricalBehavior& empirical) {
    const auto& scenario = empirical.scenario();
    json joint = json::object();
    json sequential = json::object();
    for (int c = 0; c < scenario.context_count(); ++c) {
        json joint_table = json::object();
        json seq_table = json::object();
        for (std::size_t s = 0; s < empirical.joint_counts()[c].size(); ++s) {
            const std::string key = joint_label(scenario, c, s);
            joint_table[key] = empirical.joint_counts()[c][s];
            seq_table[key] = empirical.sequential_counts()[c][s];
        }
        joint[scenario.context_name(c)] = std::move(joint_table);
        sequential[scenario.context_name(c)] = std::move(seq_table);
    }
    json single = json::object();
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        json table = json::object();
        for (int o = 0; o < scenario.outcome_count(); ++o) {
            table[scenario.outcome_label(o)] = empirical.single_counts()[m][o];
        }
        single[scenario.measurement_label(m)] = std::move(table);
    }
    return json{{"schema", "counts/v1"},
                {"scenario", scenario_to_json(scenario)},
                {"joint", std::move(joint)},
                {"single", std::move(single)},
                {"sequential", std::move(sequential)}};
}

json analysis_to_json(const AnalysisReport& report) {
    return json{{"schema", "analysis/v1"},
                {"kcbs",
                 json{{"value", format_rational(report.kcbs_value)},
                      {"estimate", report.kcbs_estimate},
                      {"ci_halfwidth", report.kcbs_ci_halfwidth},
                      {"bound", format_rational(report.kcbs_bound)},
                      {"boundary_proximate", report.boundary_proximate}}},
                {"nondisturbance",
                 json{{"exact", report.nd_exact},
                      {"within_tolerance", report.nd_within_tolerance},
                      {"max_discrepancy", report.nd_max_discrepancy},
                      {"tolerance", report.nd_tolerance}}},
                {"decision", decision_to_json(report.decision)},
                {"behavior", behavior_to_json(report.rationalized)}};
}

json manifest_to_json(const RunManifest& manifest) {
    return json{{"schema", "manifest/v1"},
                {"command", manifest.command},
                {"inputs", manifest.inputs},
                {"outputs", manifest.outputs},
                {"seed", manifest.seed},
                {"trials_per_press", manifest.trials_per_press},
                {"version", manifest.version},
                {"timestamp", manifest.timestamp}};
}

RunManifest manifest_from_json(const json& doc) {
    check_schema(doc, "manifest/v1");
    check_fields(doc, {"command", "inputs", "outputs", "seed", "trials_per_press", "version", "timestamp"});
    RunManifest manifest;
    if (!doc.at("command").is_string() || !doc.at("version").is_string() ||
        !doc.at("timestamp").is_string()) {
        throw Error("MalformedDocument", "command, version and timestamp must be strings");
    }
    if (!doc.at("seed").is_number_unsigned() || !doc.at("trials_per_press").is_number_unsigned()) {
        throw Error("MalformedDocument", "seed and trials_per_press must be unsigned integers");
    }
    manifest.command = doc.at("command").get<std::string>();
    manifest.inputs = string_array(doc.at("inputs"), "inputs");
    manifest.outputs = string_array(doc.at("outputs"), "outputs");
    manifest.seed = doc.at("seed").get<std::uint64_t>();
    manifest.trials_per_press = doc.at("trials_per_press").get<std::uint64_t>();
    manifest.version = doc.at("version").get<std::string>();
    manifest.timestamp = doc.at("timestamp").get<std::string>();
    return manifest;
}

}  // namespace hyperctx
