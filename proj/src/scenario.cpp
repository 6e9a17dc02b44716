#include "hyperctx/scenario.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hyperctx {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
    std::string s;
    for (const auto& l : labels) {
        if (!s.empty()) s += ",";
        s += l;
    }
    return s;
}

}  // namespace

std::optional<Scenario> Scenario::validate(const RawScenario& raw, std::vector<Issue>& issues) {
    if (raw.measurements.empty()) issues.push_back({"EmptyStructure", "no measurements declared"});
    if (raw.outcomes.empty()) issues.push_back({"EmptyStructure", "no outcomes declared"});
    if (raw.contexts.empty()) issues.push_back({"EmptyStructure", "no contexts declared"});

    std::unordered_map<std::string, int> measurement_index;
    for (std::size_t i = 0; i < raw.measurements.size(); ++i) {
        if (!measurement_index.emplace(raw.measurements[i], static_cast<int>(i)).second) {
            issues.push_back({"DuplicateLabel", "measurement '" + raw.measurements[i] + "' declared twice"});
        }
    }
    std::unordered_set<std::string> outcome_seen;
    for (const auto& o : raw.outcomes) {
        if (!outcome_seen.insert(o).second) {
            issues.push_back({"DuplicateLabel", "outcome '" + o + "' declared twice"});
        }
    }

    // Resolve contexts to ascending index sets.
    std::vector<std::vector<int>> contexts;
    contexts.reserve(raw.contexts.size());
    for (const auto& ctx : raw.contexts) {
        if (ctx.empty()) {
            issues.push_back({"EmptyStructure", "empty context declared"});
            continue;
        }
        std::set<int> members;
        bool ok = true;
        for (const auto& label : ctx) {
            auto it = measurement_index.find(label);
            if (it == measurement_index.end()) {
                issues.push_back({"UnknownMeasurement",
                                  "context {" + join_labels(ctx) + "} names undeclared measurement '" + label + "'"});
                ok = false;
                continue;
            }
            if (!members.insert(it->second).second) {
                issues.push_back({"DuplicateLabel",
                                  "context {" + join_labels(ctx) + "} repeats measurement '" + label + "'"});
            }
        }
        if (ok) contexts.emplace_back(members.begin(), members.end());
    }
    if (!issues.empty() && contexts.size() != raw.contexts.size()) {
        return std::nullopt;  // unresolved contexts make the conditions below meaningless
    }

    // Condition (a): the contexts cover the measurement set.
    std::vector<bool> covered(raw.measurements.size(), false);
    for (const auto& ctx : contexts) {
        for (int m : ctx) covered[m] = true;
    }
    for (std::size_t m = 0; m < covered.size(); ++m) {
        if (!covered[m]) {
            issues.push_back({"CoverViolation", "measurement '" + raw.measurements[m] + "' belongs to no context"});
        }
    }

    // Condition (b): the context collection is an antichain of distinct sets.
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        for (std::size_t j = 0; j < contexts.size(); ++j) {
            if (i == j) continue;
            const bool subset = std::includes(contexts[j].begin(), contexts[j].end(),
                                              contexts[i].begin(), contexts[i].end());
            if (!subset) continue;
            if (contexts[i] == contexts[j]) {
                if (i < j) {
                    issues.push_back({"MaximalityViolation",
                                      "context {" + join_labels(raw.contexts[i]) + "} declared twice"});
                }
            } else {
                issues.push_back({"MaximalityViolation",
                                  "context {" + join_labels(raw.contexts[i]) + "} is strictly inside {" +
                                      join_labels(raw.contexts[j]) + "}"});
            }
        }
    }

    if (!issues.empty()) return std::nullopt;

    Scenario s;
    s.measurements_ = raw.measurements;
    s.outcomes_ = raw.outcomes;
    s.contexts_ = std::move(contexts);
    return s;
}

Scenario Scenario::validated(const RawScenario& raw) {
    std::vector<Issue> issues;
    auto s = validate(raw, issues);
    if (!s) throw ValidationError(std::move(issues));
    return *std::move(s);
}

const std::vector<int>& Scenario::context(int c) const {
    if (c < 0 || c >= context_count()) {
        throw Error("UnknownContext", "context index " + std::to_string(c) + " out of range");
    }
    return contexts_[c];
}

int Scenario::measurement_index(const std::string& label) const {
    for (std::size_t i = 0; i < measurements_.size(); ++i) {
        if (measurements_[i] == label) return static_cast<int>(i);
    }
    return -1;
}

int Scenario::outcome_index(const std::string& label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i] == label) return static_cast<int>(i);
    }
    return -1;
}

std::string Scenario::context_name(int c) const {
    const auto& ctx = context(c);
    std::string s;
    for (int m : ctx) {
        if (!s.empty()) s += ",";
        s += measurements_[m];
    }
    return s;
}

int Scenario::context_index(const std::vector<int>& sorted_members) const {
    for (int c = 0; c < context_count(); ++c) {
        if (contexts_[c] == sorted_members) return c;
    }
    return -1;
}

std::size_t Scenario::context_table_size(int c) const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < context(c).size(); ++i) n *= outcomes_.size();
    return n;
}

std::size_t Scenario::global_assignment_count(std::size_t limit) const {
    std::size_t n = 1;
    for (int m = 0; m < measurement_count(); ++m) {
        if (n > limit / outcomes_.size()) {
            throw Error("ScenarioTooLarge",
                        "global assignment count exceeds the enumeration limit of " + std::to_string(limit));
        }
        n *= outcomes_.size();
    }
    if (n > limit) {
        throw Error("ScenarioTooLarge",
                    "global assignment count exceeds the enumeration limit of " + std::to_string(limit));
    }
    return n;
}

bool Scenario::operator==(const Scenario& other) const {
    return measurements_ == other.measurements_ && outcomes_ == other.outcomes_ && contexts_ == other.contexts_;
}

Scenario build_n_cycle(int n) {
    if (n < 3) {
        throw Error("InvalidCycle", "n-cycle requires n >= 3, got " + std::to_string(n));
    }
    RawScenario raw;
    raw.outcomes = {"⊥", "⊤"};
    for (int i = 0; i < n; ++i) raw.measurements.push_back("A" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        raw.contexts.push_back({raw.measurements[i], raw.measurements[(i + 1) % n]});
    }
    return Scenario::validated(raw);
}

std::size_t rank_of(const std::vector<int>& digits, int base) {
    std::size_t r = 0;
    for (int d : digits) r = r * static_cast<std::size_t>(base) + static_cast<std::size_t>(d);
    return r;
}

std::vector<int> unrank(std::size_t rank, int slots, int base) {
    std::vector<int> digits(slots, 0);
    for (int i = slots - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(rank % base);
        rank /= base;
    }
    return digits;
}

std::vector<JointOutcome> enumerate_joint_outcomes(const Scenario& scenario, int context_index) {
    const auto& ctx = scenario.context(context_index);
    const std::size_t total = scenario.context_table_size(context_index);
    std::vector<JointOutcome> result;
    result.reserve(total);
    for (std::size_t r = 0; r < total; ++r) {
        result.push_back({context_index, unrank(r, static_cast<int>(ctx.size()), scenario.outcome_count())});
    }
    return result;
}

std::vector<GlobalAssignment> enumerate_global_assignments(const Scenario& scenario, std::size_t limit) {
    const std::size_t total = scenario.global_assignment_count(limit);
    std::vector<GlobalAssignment> result;
    result.reserve(total);
    for (std::size_t r = 0; r < total; ++r) {
        result.push_back({unrank(r, scenario.measurement_count(), scenario.outcome_count())});
    }
    return result;
}

std::size_t restrict_rank(const Scenario& scenario, std::size_t global_rank, int context_index) {
    const auto digits = unrank(global_rank, scenario.measurement_count(), scenario.outcome_count());
    const auto& ctx = scenario.context(context_index);
    std::size_t r = 0;
    for (int m : ctx) r = r * scenario.outcome_count() + digits[m];
    return r;
}

}  // namespace hyperctx
