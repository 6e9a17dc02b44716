#include "hyperctx/behavior.hpp"
#include "hyperctx/device.hpp"
#include "hyperctx/json_io.hpp"
#include "hyperctx/polytope.hpp"
#include "hyperctx/realization.hpp"
#include "hyperctx/scenario.hpp"
#include "hyperctx/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using hyperctx::Error;
using hyperctx::ValidationError;
using nlohmann::json;

// Exit codes: 0 ok / noncontextual / verified, 1 contextual / not verified,
// 2 validation or malformed input, 64 usage, 74 I/O.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;
constexpr int kUsage = 64;
constexpr int kIo = 74;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoFailure("cannot read " + path);
    return json::parse(buffer.str());  // json::parse_error maps to exit 2
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoFailure("cannot write " + path);
}

std::string dump_document(const json& doc, const std::string& format) {
    return format == "pretty" ? doc.dump(2) + "\n" : doc.dump() + "\n";
}

std::string current_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string output = ".";
    std::string format = "json";
};

int run_scenario(const GlobalOptions& options, std::optional<int> cycle,
                 const std::string& file) {
    hyperctx::Scenario scenario = cycle ? hyperctx::build_n_cycle(*cycle)
                                        : hyperctx::scenario_from_json(read_json_file(file));
    std::cout << dump_document(hyperctx::scenario_to_json(scenario), options.format);
    return kOk;
}

int run_simulate(const GlobalOptions& options, const std::string& mode, const std::string& device_file,
                 int side, std::uint64_t trials, bool parallel, std::string timestamp) {
    hyperctx::DeviceConfig config;
    std::vector<std::string> inputs;
    if (!device_file.empty()) {
        config = hyperctx::device_from_json(read_json_file(device_file));
        inputs.push_back(device_file);
    } else if (mode == "overlapped") {
        config = hyperctx::overlapped_device(side);
    } else {
        config = hyperctx::default_device();
    }
    {
        auto issues = hyperctx::validate_device(config);
        if (!issues.empty()) throw ValidationError(std::move(issues));
    }

    const hyperctx::Scenario scenario = hyperctx::device_scenario(config);
    std::vector<hyperctx::PressSpec> schedule;
    if (mode == "sequential") {
        for (int i = 0; i < scenario.measurement_count(); ++i) {
            hyperctx::PressSpec spec;
            spec.kind = hyperctx::PressKind::Sequential;
            spec.measurement = i;
            spec.second = (i + 1) % scenario.measurement_count();
            schedule.push_back(spec);
        }
    } else {
        for (int c = 0; c < scenario.context_count(); ++c) {
            hyperctx::PressSpec spec;
            spec.kind = hyperctx::PressKind::Joint;
            spec.context_index = c;
            schedule.push_back(spec);
        }
    }

    hyperctx::ExperimentOptions experiment;
    experiment.execution = parallel ? hyperctx::Execution::Parallel : hyperctx::Execution::Serial;
    std::vector<hyperctx::TrialRecord> log;
    const hyperctx::EmpiricalBehavior empirical =
        hyperctx::run_experiment(config, schedule, options.seed, trials, experiment, &log);

    const std::filesystem::path dir(options.output);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoFailure("cannot create output directory " + dir.string());

    std::vector<std::string> outputs;
    {
        std::ostringstream lines;
        for (const auto& record : log) lines << hyperctx::trial_to_json(record).dump() << "\n";
        write_text_file((dir / "trials.jsonl").string(), lines.str());
        outputs.push_back("trials.jsonl");
    }
    write_text_file((dir / "counts.json").string(),
                    hyperctx::counts_to_json(empirical).dump(2) + "\n");
    outputs.push_back("counts.json");

    bool analyzed = false;
    if (mode != "sequential") {
        const hyperctx::AnalysisReport report = hyperctx::estimate_and_certify(empirical);
        write_text_file((dir / "behavior.json").string(),
                        hyperctx::behavior_to_json(report.rationalized).dump(2) + "\n");
        outputs.push_back("behavior.json");
        write_text_file((dir / "analysis.json").string(),
                        hyperctx::analysis_to_json(report).dump(2) + "\n");
        outputs.push_back("analysis.json");
        analyzed = true;
        if (options.format == "pretty") {
            std::cout << "cycle correlation value " << hyperctx::format_rational(report.kcbs_value)
                      << " (classical bound " << hyperctx::format_rational(report.kcbs_bound) << ")\n"
                      << "verdict: "
                      << (report.decision.verdict == hyperctx::Verdict::Noncontextual ? "noncontextual"
                                                                                      : "contextual")
                      << "\n";
        }
    }

    if (timestamp.empty()) timestamp = current_timestamp();
    hyperctx::RunManifest manifest;
    manifest.command = "simulate --mode " + mode;
    manifest.inputs = inputs;
    manifest.outputs = outputs;
    manifest.outputs.push_back("manifest.json");
    manifest.seed = options.seed;
    manifest.trials_per_press = trials;
    manifest.version = hyperctx::kVersion;
    manifest.timestamp = timestamp;
    write_text_file((dir / "manifest.json").string(),
                    hyperctx::manifest_to_json(manifest).dump(2) + "\n");

    if (options.format == "pretty") {
        std::cout << "wrote " << manifest.outputs.size() << " files to " << dir.string() << "\n";
    } else {
        json summary{{"outputs", manifest.outputs}, {"directory", dir.string()}, {"analyzed", analyzed}};
        std::cout << summary.dump() << "\n";
    }
    return kOk;
}

int run_certify(const GlobalOptions& options, const std::string& behavior_file) {
    const hyperctx::Behavior behavior = hyperctx::behavior_from_json(read_json_file(behavior_file));
    const hyperctx::NcDecision decision = hyperctx::decide_noncontextual(behavior);
    std::cout << dump_document(hyperctx::decision_to_json(decision), options.format);

    const bool noncontextual = decision.verdict == hyperctx::Verdict::Noncontextual;
    std::cerr << "verdict: " << (noncontextual ? "noncontextual" : "contextual") << "\n";
    bool is_cycle = behavior.scenario().outcome_count() == 2;
    for (int c = 0; is_cycle && c < behavior.scenario().context_count(); ++c) {
        is_cycle = behavior.scenario().context(c).size() == 2;
    }
    if (is_cycle) {
        const auto inequality = hyperctx::cycle_inequality(behavior.scenario());
        const auto evaluation = hyperctx::evaluate_inequality(behavior, inequality);
        std::cerr << "cycle correlation value " << hyperctx::format_rational(evaluation.value)
                  << ", classical bound " << hyperctx::format_rational(inequality.bound())
                  << (evaluation.satisfied ? " (satisfied)" : " (violated)") << "\n";
    }
    if (!noncontextual) {
        std::cerr << "certificate value " << hyperctx::format_rational(decision.certificate_value)
                  << " exceeds bound " << hyperctx::format_rational(decision.certificate->bound()) << "\n";
    }
    return noncontextual ? kOk : kNegative;
}

int run_verify(const GlobalOptions& options, const std::string& behavior_file,
               const std::string& realization_file, bool classical, double tolerance) {
    const hyperctx::Behavior behavior = hyperctx::behavior_from_json(read_json_file(behavior_file));
    const json realization_doc = read_json_file(realization_file);

    json report_doc{{"schema", "verify-report/v1"}};
    bool verified = false;
    std::string failure;
    if (classical) {
        const auto realization = hyperctx::classical_from_json(realization_doc);
        const auto report = hyperctx::verify_classical(realization, behavior);
        verified = report.verified;
        report_doc["kind"] = "classical";
        json discrepancies = json::array();
        for (const auto& d : report.discrepancies) {
            discrepancies.push_back(
                json{{"context", behavior.scenario().context_name(d.context_index)},
                     {"joint_outcome", d.joint_rank},
                     {"expected", hyperctx::format_rational(d.expected)},
                     {"actual", hyperctx::format_rational(d.actual)}});
        }
        report_doc["discrepancies"] = std::move(discrepancies);
        if (!verified) {
            const auto& d = report.discrepancies.front();
            failure = "context " + behavior.scenario().context_name(d.context_index) + ": expected " +
                      hyperctx::format_rational(d.expected) + ", realization gives " +
                      hyperctx::format_rational(d.actual);
        }
    } else {
        const auto realization = hyperctx::quantum_from_json(realization_doc);
        const auto report = hyperctx::verify_quantum(realization, behavior, tolerance);
        verified = report.verified;
        report_doc["kind"] = "quantum";
        if (!verified) {
            report_doc["failed_condition"] = report.failed_condition;
            report_doc["detail"] = report.detail;
            failure = "condition (" + report.failed_condition + "): " + report.detail;
        }
    }
    report_doc["verified"] = verified;
    std::cout << dump_document(report_doc, options.format);
    if (verified) {
        std::cerr << "verified\n";
        return kOk;
    }
    std::cerr << "not verified: " << failure << "\n";
    return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compatibility-hypergraph contextuality toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions options;
    app.add_option("--seed", options.seed, "RNG seed")->capture_default_str();
    app.add_option("--output", options.output, "output directory")->capture_default_str();
    app.add_option("--format", options.format, "stdout format")
        ->check(CLI::IsMember({"json", "pretty"}))
        ->capture_default_str();

    auto* scenario_cmd = app.add_subcommand("scenario", "emit a validated scenario");
    std::optional<int> cycle;
    std::string scenario_file;
    auto* cycle_opt = scenario_cmd->add_option("--cycle", cycle, "n-cycle size");
    auto* file_opt = scenario_cmd->add_option("--file", scenario_file, "scenario JSON file");
    cycle_opt->excludes(file_opt);

    auto* simulate_cmd = app.add_subcommand("simulate", "run the device simulator");
    std::string mode = "contextual";
    std::string device_file;
    int side = 0;
    std::uint64_t trials = 100000;
    bool parallel = false;
    std::string timestamp;
    simulate_cmd->add_option("--mode", mode, "press schedule")
        ->check(CLI::IsMember({"contextual", "overlapped", "sequential"}))
        ->capture_default_str();
    simulate_cmd->add_option("--device", device_file, "device config JSON (overrides --mode's device)");
    simulate_cmd->add_option("--side", side, "overlapped detector side")->check(CLI::Range(0, 1));
    simulate_cmd->add_option("--trials", trials, "trials per press")->capture_default_str();
    simulate_cmd->add_flag("--parallel", parallel, "generate trials with OpenMP");
    simulate_cmd->add_option("--timestamp", timestamp,
                             "manifest timestamp (defaults to the current UTC time)");

    auto* certify_cmd = app.add_subcommand("certify", "decide noncontextuality of a behavior");
    std::string behavior_file;
    certify_cmd->add_option("--behavior", behavior_file, "behavior JSON file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a realization against a behavior");
    std::string verify_behavior;
    std::string realization_file;
    bool classical = false;
    bool quantum = false;
    double tolerance = hyperctx::kQuantumTolerance;
    verify_cmd->add_option("--behavior", verify_behavior, "behavior JSON file")->required();
    verify_cmd->add_option("--realization", realization_file, "realization JSON file")->required();
    auto* classical_flag = verify_cmd->add_flag("--classical", classical, "classical realization");
    auto* quantum_flag = verify_cmd->add_flag("--quantum", quantum, "quantum realization");
    classical_flag->excludes(quantum_flag);
    verify_cmd->add_option("--tolerance", tolerance, "quantum tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (scenario_cmd->parsed()) {
            if (!cycle && scenario_file.empty()) {
                std::cerr << "error: usage: scenario needs --cycle or --file\n";
                return kUsage;
            }
            return run_scenario(options, cycle, scenario_file);
        }
        if (simulate_cmd->parsed()) {
            return run_simulate(options, mode, device_file, side, trials, parallel, timestamp);
        }
        if (certify_cmd->parsed()) {
            return run_certify(options, behavior_file);
        }
        if (verify_cmd->parsed()) {
            if (classical == quantum) {
                std::cerr << "error: usage: verify needs exactly one of --classical or --quantum\n";
                return kUsage;
            }
            return run_verify(options, verify_behavior, realization_file, classical, tolerance);
        }
        return kUsage;
    } catch (const IoFailure& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kIo;
    } catch (const ValidationError& e) {
        for (const auto& issue : e.issues()) {
            std::cerr << "error: " << issue.code << ": " << issue.detail << "\n";
        }
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const json::exception& e) {
        std::cerr << "error: MalformedDocument: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 70;
    }
}
