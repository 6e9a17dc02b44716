#pragma once

#include "hyperctx/errors.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hyperctx {

/// Unvalidated scenario description, as it arrives from a file or a builder.
/// Contexts name measurements by label.
struct RawScenario {
    std::vector<std::string> measurements;
    std::vector<std::string> outcomes;
    std::vector<std::vector<std::string>> contexts;
};

/// A measurement scenario: a finite measurement set, a collection of maximal
/// contexts covering it (the hyperedges), and a shared finite outcome set.
///
/// Structural requirements enforced at construction:
///   - cover: every measurement belongs to at least one context;
///   - antichain: no context is contained in a different one, and no context
///     is declared twice;
///   - non-empty, duplicate-free label sets; non-empty contexts.
///
/// Canonical ordering is fixed here and inherited by every downstream table:
/// measurements and outcomes in declaration order, each context stored as an
/// ascending list of measurement indices. Instances are immutable.
class Scenario {
  public:
    /// Full validation. On failure returns every violation, one Issue per
    /// offending context/measurement, and no scenario.
    static std::optional<Scenario> validate(const RawScenario& raw, std::vector<Issue>& issues);

    /// Validation that throws ValidationError instead of collecting issues.
    static Scenario validated(const RawScenario& raw);

    int measurement_count() const { return static_cast<int>(measurements_.size()); }
    int outcome_count() const { return static_cast<int>(outcomes_.size()); }
    int context_count() const { return static_cast<int>(contexts_.size()); }

    const std::vector<std::string>& measurements() const { return measurements_; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<std::vector<int>>& contexts() const { return contexts_; }

    /// Measurement indices of context `c`, ascending.
    const std::vector<int>& context(int c) const;

    /// -1 when the label is unknown.
    int measurement_index(const std::string& label) const;
    int outcome_index(const std::string& label) const;

    const std::string& measurement_label(int m) const { return measurements_.at(m); }
    const std::string& outcome_label(int o) const { return outcomes_.at(o); }

    /// Context id used in file formats: member labels joined with ','.
    std::string context_name(int c) const;
    /// Index of the context with the given member set, or -1.
    int context_index(const std::vector<int>& sorted_members) const;

    /// |O|^|C| — the size of the joint-outcome table of context `c`.
    std::size_t context_table_size(int c) const;

    /// |O|^|A| — the number of global assignments. Throws
    /// Error("ScenarioTooLarge") if it exceeds `limit`.
    std::size_t global_assignment_count(std::size_t limit) const;

    bool operator==(const Scenario& other) const;
    bool operator!=(const Scenario& other) const { return !(*this == other); }

  private:
    Scenario() = default;

    std::vector<std::string> measurements_;
    std::vector<std::string> outcomes_;
    std::vector<std::vector<int>> contexts_;
};

/// The n-cycle: n dichotomic measurements A0..A(n-1) with outcome set {⊥,⊤}
/// and contexts {Ai, A(i+1 mod n)}. Rejects n < 3 (the 2-cycle collapses to a
/// repeated context). n = 5 is the KCBS scenario.
Scenario build_n_cycle(int n);

/// A joint outcome on a context: one outcome index per member measurement,
/// aligned with the context's ascending measurement order.
struct JointOutcome {
    int context_index = -1;
    std::vector<int> outcomes;
};

/// A total outcome assignment, one outcome index per measurement in
/// declaration order.
struct GlobalAssignment {
    std::vector<int> outcomes;
};

// Canonical enumeration: lexicographic with the last slot varying fastest,
// outcome 0 first. rank/unrank are inverses; every table in the toolkit is
// indexed by these ranks.
std::size_t rank_of(const std::vector<int>& digits, int base);
std::vector<int> unrank(std::size_t rank, int slots, int base);

/// All |O|^|C| joint outcomes of a context, in canonical order. Stable across
/// runs. Throws Error("UnknownContext") if the index is out of range.
std::vector<JointOutcome> enumerate_joint_outcomes(const Scenario& scenario, int context_index);

/// All |O|^|A| global assignments, canonical order (same digit enumeration).
std::vector<GlobalAssignment> enumerate_global_assignments(const Scenario& scenario,
                                                           std::size_t limit = std::size_t{1} << 20);

/// Rank of the restriction of a global assignment (given by its rank) to a
/// context. Used to tie global-distribution columns to context table rows.
std::size_t restrict_rank(const Scenario& scenario, std::size_t global_rank, int context_index);

}  // namespace hyperctx
