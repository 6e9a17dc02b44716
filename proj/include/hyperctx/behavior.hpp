#pragma once

#include "hyperctx/rational.hpp"
#include "hyperctx/scenario.hpp"

#include <vector>

namespace hyperctx {

/// A behavior: one probability distribution over joint outcomes per maximal
/// context, exact rationals throughout. Construction enforces, per context:
/// a full table in canonical rank order, entries in [0,1], sum exactly 1.
/// Sub-context data is never stored; it is derived by marginalization.
class Behavior {
  public:
    Behavior(Scenario scenario, std::vector<std::vector<Rational>> tables);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<std::vector<Rational>>& tables() const { return tables_; }
    const std::vector<Rational>& table(int context_index) const;
    const Rational& probability(int context_index, std::size_t joint_rank) const;

    bool operator==(const Behavior& other) const {
        return scenario_ == other.scenario_ && tables_ == other.tables_;
    }

  private:
    Scenario scenario_;
    std::vector<std::vector<Rational>> tables_;
};

/// A distribution over O^subset obtained by marginalizing a context table.
struct MarginalDistribution {
    std::vector<int> subset;        // measurement indices, ascending
    std::vector<Rational> table;    // canonical rank order over O^subset

    bool operator==(const MarginalDistribution& other) const {
        return subset == other.subset && table == other.table;
    }
};

/// Marginal of the behavior's context table onto `subset` (ascending
/// measurement indices, subset of the context). Exact arithmetic.
/// Throws Error("SubsetNotInContext") / Error("UnknownContext").
MarginalDistribution marginalize(const Behavior& behavior, int context_index,
                                 const std::vector<int>& subset);

/// Further marginalization of an already-computed marginal; `outcome_count`
/// is the scenario's |O|. Used to check chaining consistency.
MarginalDistribution marginalize(const MarginalDistribution& marginal, int outcome_count,
                                 const std::vector<int>& subset);

struct NondisturbanceViolation {
    int context_a = -1;
    int context_b = -1;
    MarginalDistribution marginal_a;  // from context_a, on the intersection
    MarginalDistribution marginal_b;  // from context_b, on the intersection
};

struct NondisturbanceReport {
    bool nondisturbing = true;
    std::vector<NondisturbanceViolation> violations;
};

/// Exact agreement of marginals on every intersection of context pairs.
NondisturbanceReport check_nondisturbance(const Behavior& behavior);

/// The 5-cycle behavior with perfectly anti-correlated fair pairs in every
/// context: p(⊥,⊤) = p(⊤,⊥) = 1/2, same-outcome pairs impossible.
Behavior generalized_coin_toss();

/// The 5-cycle behavior with anti-correlated fair pairs on C0..C3 and a
/// perfectly correlated fair pair on C4 = {A4,A0}. Admits a global section.
Behavior rearranged_device_behavior();

}  // namespace hyperctx
