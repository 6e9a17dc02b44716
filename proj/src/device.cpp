#include "hyperctx/device.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperctx {

namespace {

constexpr int kTop = 1;  // index of "⊤" in the cycle outcome set {⊥,⊤}
constexpr int kBottom = 0;

int shade_outcome(Shade shade) { return shade == Shade::Dark ? kTop : kBottom; }

int sector_count(const DeviceConfig& config) { return 2 * config.colors; }

// Slots the detector can see for a given press. Contextual mode: the pressed
// context's slot pair. Overlapped mode: the shared semicircle.
std::vector<int> visible_slots(const DeviceConfig& config, int context_index) {
    if (config.mode == DeviceMode::Contextual) {
        const auto& slots = config.geometry.at(context_index).read_slots;
        return {slots[0], slots[1]};
    }
    std::vector<int> slots(config.colors);
    for (int i = 0; i < config.colors; ++i) slots[i] = config.overlapped_side * config.colors + i;
    return slots;
}

// Reads the shade of one color through the visible slots. The device
// invariants guarantee each requested color shows exactly once.
int read_color(const DeviceConfig& config, const DeviceState& state, const std::vector<int>& slots,
               int color) {
    for (int slot : slots) {
        const auto& sector = config.sectors[state.sector_at_slot(slot, sector_count(config))];
        if (sector.color == color) return shade_outcome(sector.shade);
    }
    throw std::logic_error("color " + std::to_string(color) + " is not visible to the detector");
}

// Measurement A_m asks for color m.
int color_of_measurement(int m) { return m; }

// Outcomes of one joint press on context `c`, in the context's canonical
// ascending member order. Contextual-mode anti-correlation is asserted on
// every trial; overlapped mode asserts the correlation pattern the
// configuration implies.
std::array<int, 2> joint_outcomes(const DeviceConfig& config, const Scenario& scenario, int c,
                                  PressRandomness& rng) {
    if (c < 0 || c >= scenario.context_count()) {
        throw Error("UnknownContext", "context index " + std::to_string(c) + " out of range");
    }
    const DeviceState state{rng.draw_bit() ? 1 : 0};
    const auto slots = visible_slots(config, c);
    const auto& members = scenario.context(c);
    std::array<int, 2> outcomes{};
    for (std::size_t k = 0; k < 2; ++k) {
        outcomes[k] = read_color(config, state, slots, color_of_measurement(members[k]));
    }
    if (config.mode == DeviceMode::Contextual && outcomes[0] == outcomes[1]) {
        throw std::logic_error("geometric anti-correlation violated in context " + scenario.context_name(c));
    }
    if (config.mode == DeviceMode::Overlapped) {
        // Whether the pair agrees is fixed by the geometry: flipping the
        // configuration flips both shades at once.
        const DeviceState rest0{0};
        const bool correlated = read_color(config, rest0, slots, color_of_measurement(members[0])) ==
                                read_color(config, rest0, slots, color_of_measurement(members[1]));
        if ((outcomes[0] == outcomes[1]) != correlated) {
            throw std::logic_error("overlapped correlation pattern violated in context " +
                                   scenario.context_name(c));
        }
    }
    return outcomes;
}

// The contexts containing a measurement, ascending. In a cycle there are two.
std::vector<int> containing_contexts(const Scenario& scenario, int measurement) {
    std::vector<int> result;
    for (int c = 0; c < scenario.context_count(); ++c) {
        const auto& ctx = scenario.context(c);
        if (std::find(ctx.begin(), ctx.end(), measurement) != ctx.end()) result.push_back(c);
    }
    return result;
}

// Outcome of one single press. Selection draws a fair bit over the containing
// contexts in ascending order (bit 0 picks the lower index) unless a context
// is forced.
int single_outcome(const DeviceConfig& config, const Scenario& scenario, int measurement,
                   PressRandomness& rng, std::optional<int> forced_context, int* selected = nullptr) {
    if (measurement < 0 || measurement >= scenario.measurement_count()) {
        throw Error("UnknownMeasurement", "measurement index " + std::to_string(measurement) + " out of range");
    }
    int chosen;
    if (forced_context) {
        const auto& ctx = scenario.context(*forced_context);
        if (std::find(ctx.begin(), ctx.end(), measurement) == ctx.end()) {
            throw Error("UnknownContext", "context " + scenario.context_name(*forced_context) +
                                              " does not contain " + scenario.measurement_label(measurement));
        }
        chosen = *forced_context;
    } else if (config.policy == SelectionPolicy::RandomUniform) {
        const auto candidates = containing_contexts(scenario, measurement);
        chosen = candidates[rng.draw_bit() ? 1 : 0];
    } else {
        throw Error("AgentChoiceRequired", "agent-chosen selection needs a forced context");
    }
    if (selected) *selected = chosen;
    const DeviceState state{rng.draw_bit() ? 1 : 0};
    return read_color(config, state, visible_slots(config, chosen), color_of_measurement(measurement));
}

const std::string kOutcomeLabels[2] = {"⊥", "⊤"};

}  // namespace

DeviceConfig default_device() {
    DeviceConfig config;
    config.colors = 5;
    for (int k = 0; k < 10; ++k) {
        config.sectors.push_back({k % 5, k % 2 == 0 ? Shade::Dark : Shade::Light});
    }
    for (int i = 0; i < 5; ++i) {
        config.geometry.push_back({i, {i, (i + 1) % 10}});
    }
    return config;
}

DeviceConfig overlapped_device(int side) {
    DeviceConfig config = default_device();
    config.mode = DeviceMode::Overlapped;
    config.overlapped_side = side;
    return config;
}

Scenario device_scenario(const DeviceConfig& config) { return build_n_cycle(config.colors); }

std::vector<Issue> validate_device(const DeviceConfig& config) {
    std::vector<Issue> issues;
    const int n = config.colors;
    if (n < 3) {
        issues.push_back({"InvalidDevice", "device needs at least 3 colors"});
        return issues;
    }
    if (static_cast<int>(config.sectors.size()) != 2 * n) {
        issues.push_back({"InvalidDevice", "expected " + std::to_string(2 * n) + " sectors, got " +
                                               std::to_string(config.sectors.size())});
        return issues;
    }
    for (int k = 0; k < n; ++k) {
        const auto& front = config.sectors[k];
        const auto& back = config.sectors[k + n];
        if (front.color != back.color) {
            issues.push_back({"InvalidDevice", "sectors " + std::to_string(k) + " and " +
                                                   std::to_string(k + n) + " carry different colors"});
        } else if (front.shade == back.shade) {
            issues.push_back({"InvalidDevice", "opposite sectors of color " + std::to_string(front.color) +
                                                   " share a shade"});
        }
    }
    std::vector<int> occurrences(n, 0);
    for (const auto& sector : config.sectors) {
        if (sector.color < 0 || sector.color >= n) {
            issues.push_back({"InvalidDevice", "sector color " + std::to_string(sector.color) + " out of range"});
            return issues;
        }
        ++occurrences[sector.color];
    }
    for (int c = 0; c < n; ++c) {
        if (occurrences[c] != 2) {
            issues.push_back({"InvalidDevice", "color " + std::to_string(c) + " appears " +
                                                   std::to_string(occurrences[c]) + " times, expected 2"});
        }
    }
    if (static_cast<int>(config.geometry.size()) != n) {
        issues.push_back({"InvalidDevice", "expected one geometry entry per context"});
        return issues;
    }
    if (config.overlapped_side != 0 && config.overlapped_side != 1) {
        issues.push_back({"InvalidDevice", "overlapped side must be 0 or 1"});
    }
    if (config.mode == DeviceMode::Contextual) {
        for (int i = 0; i < n; ++i) {
            const auto& slots = config.geometry[i].read_slots;
            for (int slot : slots) {
                if (slot < 0 || slot >= 2 * n) {
                    issues.push_back({"InvalidDevice", "context " + std::to_string(i) + " reads slot " +
                                                           std::to_string(slot) + ", out of range"});
                    return issues;
                }
            }
            const int gap = (slots[1] - slots[0] + 2 * n) % (2 * n);
            if (gap != 1 && gap != 2 * n - 1) {
                issues.push_back({"InvalidDevice",
                                  "context " + std::to_string(i) + " reads non-adjacent slots"});
            }
            // Both resting configurations must show colors i and i+1.
            for (int rest = 0; rest < 2; ++rest) {
                const DeviceState state{rest};
                std::vector<int> colors;
                for (int slot : slots) {
                    colors.push_back(config.sectors[state.sector_at_slot(slot, 2 * n)].color);
                }
                std::sort(colors.begin(), colors.end());
                std::vector<int> expected{i, (i + 1) % n};
                std::sort(expected.begin(), expected.end());
                if (colors != expected) {
                    issues.push_back({"InvalidDevice", "context " + std::to_string(i) +
                                                           " cannot read colors " + std::to_string(expected[0]) +
                                                           " and " + std::to_string(expected[1]) +
                                                           " in resting configuration " + std::to_string(rest)});
                }
            }
        }
    }
    return issues;
}

TrialRecord press_joint(const DeviceConfig& config, int context_index, PressRandomness& rng) {
    const Scenario scenario = device_scenario(config);
    const auto outcomes = joint_outcomes(config, scenario, context_index, rng);
    const auto& members = scenario.context(context_index);
    TrialRecord record;
    record.pressed = scenario.context_name(context_index);
    record.mode = "joint";
    for (std::size_t k = 0; k < 2; ++k) {
        record.measurements.push_back(scenario.measurement_label(members[k]));
        record.outcomes.push_back(kOutcomeLabels[outcomes[k]]);
    }
    record.rng_seed_path = rng.path;
    return record;
}

TrialRecord press_single(const DeviceConfig& config, int measurement, PressRandomness& rng,
                         std::optional<int> forced_context) {
    const Scenario scenario = device_scenario(config);
    const int outcome = single_outcome(config, scenario, measurement, rng, forced_context);
    TrialRecord record;
    record.pressed = scenario.measurement_label(measurement);
    record.mode = "single";
    record.measurements.push_back(scenario.measurement_label(measurement));
    record.outcomes.push_back(kOutcomeLabels[outcome]);
    record.rng_seed_path = rng.path;
    return record;
}

TrialRecord press_sequential(const DeviceConfig& config, int first, int second, PressRandomness& rng) {
    const Scenario scenario = device_scenario(config);
    const int n = scenario.measurement_count();
    if (first < 0 || first >= n || second < 0 || second >= n) {
        throw Error("UnknownMeasurement", "measurement index out of range");
    }
    if (second != (first + 1) % n && first != (second + 1) % n) {
        throw Error("NonAdjacentPress", scenario.measurement_label(first) + " and " +
                                            scenario.measurement_label(second) + " are not consecutive");
    }
    TrialRecord record;
    record.pressed = scenario.measurement_label(first) + "," + scenario.measurement_label(second);
    record.mode = "sequential";
    for (int m : {first, second}) {
        record.measurements.push_back(scenario.measurement_label(m));
        record.outcomes.push_back(kOutcomeLabels[single_outcome(config, scenario, m, rng, std::nullopt)]);
    }
    record.rng_seed_path = rng.path;
    return record;
}

EmpiricalBehavior::EmpiricalBehavior(Scenario scenario) : scenario_(std::move(scenario)) {
    joint_.resize(scenario_.context_count());
    for (int c = 0; c < scenario_.context_count(); ++c) {
        joint_[c].assign(scenario_.context_table_size(c), 0);
    }
    single_.assign(scenario_.measurement_count(),
                   std::vector<std::uint64_t>(scenario_.outcome_count(), 0));
    sequential_.resize(scenario_.context_count());
    for (int c = 0; c < scenario_.context_count(); ++c) {
        sequential_[c].assign(scenario_.context_table_size(c), 0);
    }
}

std::uint64_t EmpiricalBehavior::joint_total(int context_index) const {
    std::uint64_t total = 0;
    for (auto v : joint_.at(context_index)) total += v;
    return total;
}

std::uint64_t EmpiricalBehavior::single_total(int measurement) const {
    std::uint64_t total = 0;
    for (auto v : single_.at(measurement)) total += v;
    return total;
}

std::uint64_t EmpiricalBehavior::sequential_total(int context_index) const {
    std::uint64_t total = 0;
    for (auto v : sequential_.at(context_index)) total += v;
    return total;
}

void EmpiricalBehavior::add_joint(int context_index, std::size_t joint_rank) {
    ++joint_.at(context_index).at(joint_rank);
}

void EmpiricalBehavior::add_single(int measurement, int outcome) {
    ++single_.at(measurement).at(outcome);
}

void EmpiricalBehavior::add_sequential(int context_index, std::size_t rank) {
    ++sequential_.at(context_index).at(rank);
}

void EmpiricalBehavior::merge(const EmpiricalBehavior& other) {
    for (std::size_t c = 0; c < joint_.size(); ++c) {
        for (std::size_t s = 0; s < joint_[c].size(); ++s) joint_[c][s] += other.joint_[c][s];
    }
    for (std::size_t m = 0; m < single_.size(); ++m) {
        for (std::size_t o = 0; o < single_[m].size(); ++o) single_[m][o] += other.single_[m][o];
    }
    for (std::size_t c = 0; c < sequential_.size(); ++c) {
        for (std::size_t s = 0; s < sequential_[c].size(); ++s) sequential_[c][s] += other.sequential_[c][s];
    }
}

std::vector<std::vector<double>> EmpiricalBehavior::joint_frequencies() const {
    std::vector<std::vector<double>> result(joint_.size());
    for (std::size_t c = 0; c < joint_.size(); ++c) {
        const double total = static_cast<double>(joint_total(static_cast<int>(c)));
        result[c].resize(joint_[c].size(), 0.0);
        if (total == 0) continue;
        for (std::size_t s = 0; s < joint_[c].size(); ++s) {
            result[c][s] = static_cast<double>(joint_[c][s]) / total;
        }
    }
    return result;
}

Behavior EmpiricalBehavior::rationalized() const {
    std::vector<std::vector<Rational>> tables(joint_.size());
    for (std::size_t c = 0; c < joint_.size(); ++c) {
        const std::uint64_t total = joint_total(static_cast<int>(c));
        if (total == 0) {
            throw Error("MissingContextData",
                        "context " + scenario_.context_name(static_cast<int>(c)) + " has no joint trials");
        }
        tables[c].reserve(joint_[c].size());
        for (auto count : joint_[c]) {
            tables[c].emplace_back(Integer(count), Integer(total));
        }
    }
    return Behavior(scenario_, std::move(tables));
}

namespace {

// One trial of a schedule entry, tallied and optionally logged. The record is
// built only when a log sink exists; the tally path works on indices.
void run_one_trial(const DeviceConfig& config, const Scenario& scenario, const PressSpec& spec,
                   PressRandomness& rng, EmpiricalBehavior& tally, TrialRecord* slot) {
    switch (spec.kind) {
        case PressKind::Joint: {
            const auto outcomes = joint_outcomes(config, scenario, spec.context_index, rng);
            const std::size_t rank =
                static_cast<std::size_t>(outcomes[0]) * scenario.outcome_count() + outcomes[1];
            tally.add_joint(spec.context_index, rank);
            if (slot) {
                const auto& members = scenario.context(spec.context_index);
                slot->pressed = scenario.context_name(spec.context_index);
                slot->mode = "joint";
                for (std::size_t k = 0; k < 2; ++k) {
                    slot->measurements.push_back(scenario.measurement_label(members[k]));
                    slot->outcomes.push_back(kOutcomeLabels[outcomes[k]]);
                }
                slot->rng_seed_path = rng.path;
            }
            break;
        }
        case PressKind::Single: {
            const int outcome =
                single_outcome(config, scenario, spec.measurement, rng, spec.forced_context);
            tally.add_single(spec.measurement, outcome);
            if (slot) {
                slot->pressed = scenario.measurement_label(spec.measurement);
                slot->mode = "single";
                slot->measurements.push_back(scenario.measurement_label(spec.measurement));
                slot->outcomes.push_back(kOutcomeLabels[outcome]);
                slot->rng_seed_path = rng.path;
            }
            break;
        }
        case PressKind::Sequential: {
            const int n = scenario.measurement_count();
            if (spec.measurement < 0 || spec.measurement >= n || spec.second < 0 || spec.second >= n) {
                throw Error("UnknownMeasurement", "measurement index out of range");
            }
            if (spec.second != (spec.measurement + 1) % n && spec.measurement != (spec.second + 1) % n) {
                throw Error("NonAdjacentPress", "sequential presses take consecutive measurements");
            }
            const int first = single_outcome(config, scenario, spec.measurement, rng, std::nullopt);
            const int second = single_outcome(config, scenario, spec.second, rng, std::nullopt);
            std::vector<int> pair{spec.measurement, spec.second};
            std::sort(pair.begin(), pair.end());
            const int context = scenario.context_index(pair);
            // Tally in the context's canonical member order, independent of
            // press order, so sequential and joint tables share their keys.
            const int lower = pair[0] == spec.measurement ? first : second;
            const int higher = pair[0] == spec.measurement ? second : first;
            tally.add_sequential(context,
                                 static_cast<std::size_t>(lower) * scenario.outcome_count() + higher);
            if (slot) {
                slot->pressed = scenario.measurement_label(spec.measurement) + "," +
                                scenario.measurement_label(spec.second);
                slot->mode = "sequential";
                slot->measurements = {scenario.measurement_label(spec.measurement),
                                      scenario.measurement_label(spec.second)};
                slot->outcomes = {kOutcomeLabels[first], kOutcomeLabels[second]};
                slot->rng_seed_path = rng.path;
            }
            break;
        }
    }
}

}  // namespace

EmpiricalBehavior run_experiment(const DeviceConfig& config, const std::vector<PressSpec>& schedule,
                                 std::uint64_t seed, std::uint64_t trials_per_press,
                                 const ExperimentOptions& options, std::vector<TrialRecord>* log) {
    if (schedule.empty() || trials_per_press == 0) {
        throw Error("EmptySchedule", "nothing to run");
    }
    const Scenario scenario = device_scenario(config);
    const std::uint64_t total = schedule.size() * trials_per_press;
    if (log) {
        log->clear();
        log->resize(total);
    }
    EmpiricalBehavior tally(scenario);

#ifdef _OPENMP
    if (options.execution == Execution::Parallel) {
#pragma omp parallel
        {
            EmpiricalBehavior local(scenario);
#pragma omp for schedule(static) nowait
            for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
                const std::uint64_t i = static_cast<std::uint64_t>(idx);
                PressRandomness rng = press_randomness(seed, i);
                run_one_trial(config, scenario, schedule[i / trials_per_press], rng, local,
                              log ? &(*log)[i] : nullptr);
            }
#pragma omp critical
            tally.merge(local);
        }
        return tally;
    }
#else
    (void)options;
#endif

    for (std::uint64_t i = 0; i < total; ++i) {
        PressRandomness rng = press_randomness(seed, i);
        run_one_trial(config, scenario, schedule[i / trials_per_press], rng, tally,
                      log ? &(*log)[i] : nullptr);
    }
    return tally;
}

Behavior induced_behavior(const DeviceConfig& config) {
    const Scenario scenario = device_scenario(config);
    std::vector<std::vector<Rational>> tables;
    tables.reserve(scenario.context_count());
    const Rational half(1, 2);
    for (int c = 0; c < scenario.context_count(); ++c) {
        std::vector<Rational> table(scenario.context_table_size(c), Rational(0));
        const auto slots = visible_slots(config, c);
        const auto& members = scenario.context(c);
        for (int rest = 0; rest < 2; ++rest) {
            const DeviceState state{rest};
            std::size_t rank = 0;
            for (int m : members) {
                rank = rank * scenario.outcome_count() + read_color(config, state, slots, m);
            }
            table[rank] += half;
        }
        tables.push_back(std::move(table));
    }
    return Behavior(scenario, std::move(tables));
}

AnalysisReport estimate_and_certify(const EmpiricalBehavior& empirical) {
    const Behavior rationalized = empirical.rationalized();
    const Scenario& scenario = rationalized.scenario();
    const NcInequality inequality = cycle_inequality(scenario);
    const InequalityEvaluation evaluation = evaluate_inequality(rationalized, inequality);

    // Normal-approximation CI on the correlation sum: each context's
    // correlation is 2q - 1 with q the agreement frequency over N trials,
    // so its variance is 4 q(1-q)/N.
    double variance = 0;
    for (int c = 0; c < scenario.context_count(); ++c) {
        const auto& counts = empirical.joint_counts()[c];
        const double total = static_cast<double>(empirical.joint_total(c));
        const double agree = static_cast<double>(counts[0] + counts[3]);
        const double q = agree / total;
        variance += 4.0 * q * (1.0 - q) / total;
    }

    AnalysisReport report{
        .rationalized = rationalized,
        .kcbs_value = evaluation.value,
        .kcbs_bound = inequality.bound(),
        .kcbs_estimate = static_cast<double>(evaluation.value),
        .kcbs_ci_halfwidth = 1.96 * std::sqrt(variance),
        .nd_exact = false,
        .nd_within_tolerance = true,
        .nd_max_discrepancy = 0,
        .nd_tolerance = 0,
        .decision = decide_noncontextual(rationalized),
        .boundary_proximate = false,
    };

    report.nd_exact = check_nondisturbance(rationalized).nondisturbing;

    // Statistical nondisturbance: marginal estimates from two contexts may
    // differ by sampling noise; the guard is 4 sigma of their difference,
    // sigma bounded by 0.5 sqrt(1/Na + 1/Nb).
    double worst_ratio = 0;
    for (int a = 0; a < scenario.context_count(); ++a) {
        for (int b = a + 1; b < scenario.context_count(); ++b) {
            std::vector<int> shared;
            const auto& ctx_a = scenario.context(a);
            const auto& ctx_b = scenario.context(b);
            std::set_intersection(ctx_a.begin(), ctx_a.end(), ctx_b.begin(), ctx_b.end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            const auto ma = marginalize(rationalized, a, shared);
            const auto mb = marginalize(rationalized, b, shared);
            const double tolerance =
                4.0 * 0.5 *
                std::sqrt(1.0 / static_cast<double>(empirical.joint_total(a)) +
                          1.0 / static_cast<double>(empirical.joint_total(b)));
            for (std::size_t s = 0; s < ma.table.size(); ++s) {
                const double gap = std::abs(static_cast<double>(ma.table[s] - mb.table[s]));
                const double ratio = gap / tolerance;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    report.nd_max_discrepancy = gap;
                    report.nd_tolerance = tolerance;
                }
            }
        }
    }
    report.nd_within_tolerance = worst_ratio <= 1.0;

    const Rational gap = evaluation.value - inequality.bound();
    const double abs_gap = std::abs(static_cast<double>(gap));
    report.boundary_proximate = gap == 0 || abs_gap <= report.kcbs_ci_halfwidth;
    return report;
}

}  // namespace hyperctx
