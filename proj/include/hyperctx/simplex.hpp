#pragma once

#include "hyperctx/rational.hpp"

#include <vector>

namespace hyperctx {

/// Outcome of an exact feasibility run on {x >= 0 : A x = b}.
///
/// Exactly one of `point` / `farkas` is meaningful:
///   - feasible: `point` satisfies A x = b, x >= 0 with exact equality;
///   - infeasible: `farkas` is a dual vector y with yᵀA <= 0 (componentwise)
///     and yᵀb > 0, an exact proof that no nonnegative solution exists.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> point;
    std::vector<Rational> farkas;
};

/// Decides feasibility of A x = b, x >= 0 by a phase-1 primal simplex over
/// exact rationals with Bland's least-index rule, so the run terminates on
/// every input. Rows may have negative right-hand sides; redundant
/// (linearly dependent) rows are fine. Dense tableau; intended for systems
/// up to a few thousand columns.
FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& matrix,
                                             const std::vector<Rational>& rhs);

}  // namespace hyperctx
