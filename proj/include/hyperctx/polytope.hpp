#pragma once

#include "hyperctx/behavior.hpp"
#include "hyperctx/rational.hpp"
#include "hyperctx/scenario.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hyperctx {

/// Tunables for operations that enumerate global assignments.
struct NcOptions {
    std::size_t max_global_assignments = std::size_t{1} << 20;
};

/// A probability distribution over all global assignments O^A, exact
/// rationals, dense in canonical assignment-rank order. When its context
/// marginals reproduce a behavior it is that behavior's noncontextuality
/// witness (global section).
class GlobalDistribution {
  public:
    GlobalDistribution(Scenario scenario, std::vector<Rational> table);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<Rational>& table() const { return table_; }

    /// The behavior whose context tables are this distribution's marginals.
    Behavior induced_behavior() const;

  private:
    Scenario scenario_;
    std::vector<Rational> table_;
};

enum class Direction { GreaterEqual, LessEqual };

/// A linear functional over behavior components together with a bound:
/// sum of coefficient(context, joint outcome) * p(outcome | context),
/// compared against `bound` in the given direction. Shaped exactly like a
/// behavior's tables. Must have at least one nonzero coefficient.
class NcInequality {
  public:
    NcInequality(Scenario scenario, std::vector<std::vector<Rational>> coefficients, Rational bound,
                 Direction direction);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<std::vector<Rational>>& coefficients() const { return coefficients_; }
    const Rational& bound() const { return bound_; }
    Direction direction() const { return direction_; }

  private:
    Scenario scenario_;
    std::vector<std::vector<Rational>> coefficients_;
    Rational bound_;
    Direction direction_;
};

struct InequalityEvaluation {
    Rational value;
    bool satisfied = false;  // value respects the bound in the inequality's direction
};

/// Exact evaluation of the functional on a behavior.
/// Throws Error("ScenarioMismatch") when the scenarios differ.
InequalityEvaluation evaluate_inequality(const Behavior& behavior, const NcInequality& inequality);

/// The cycle correlation inequality sum_i <Ai A(i+1)> >= bound under the
/// encoding ⊤ -> +1, ⊥ -> -1 (coefficient +1 on equal-outcome pairs, -1 on
/// unequal ones), for any scenario whose contexts are dichotomic pairs. The
/// bound is recomputed by brute force over all deterministic assignments —
/// never trusted as a constant. Throws Error("NotACycle").
NcInequality cycle_inequality(const Scenario& scenario);

/// The 5-cycle instance (the KCBS scenario).
NcInequality kcbs_inequality();

enum class Verdict { Noncontextual, Contextual };

/// Decision with its proof object: a witness distribution when
/// noncontextual, a violated inequality (Farkas dual of the marginal
/// constraint system) when contextual.
struct NcDecision {
    Verdict verdict = Verdict::Contextual;
    std::optional<GlobalDistribution> witness;
    std::optional<NcInequality> certificate;
    Rational certificate_value;  // the input behavior's value on the certificate
};

/// Decides whether a global distribution exists whose marginal on every
/// context equals the behavior's table, by exact LP feasibility.
/// Disturbing behaviors are legal inputs and come out contextual.
/// Throws Error("ScenarioTooLarge") past options.max_global_assignments.
NcDecision decide_noncontextual(const Behavior& behavior, const NcOptions& options = {});

struct SectionMismatch {
    int context_index = -1;
    std::size_t joint_rank = 0;
    Rational expected;  // behavior table entry
    Rational actual;    // candidate marginal entry
};

struct SectionCheck {
    bool matches = true;
    std::vector<SectionMismatch> mismatches;
};

/// Exact per-context comparison of the candidate's marginals against the
/// behavior. Throws Error("ScenarioMismatch").
SectionCheck verify_global_section(const Behavior& behavior, const GlobalDistribution& candidate);

/// The behaviors induced by point-mass global distributions — the vertices
/// of the noncontextual polytope. Brute-force oracle for bounds and
/// certificate validation.
std::vector<Behavior> deterministic_vertices(const Scenario& scenario, const NcOptions& options = {});

/// Extremes of an inequality functional over all deterministic vertices,
/// with the least attaining assignment rank on ties.
struct VertexExtremum {
    Rational min_value;
    Rational max_value;
    std::size_t argmin = 0;
    std::size_t argmax = 0;
};

/// Serial reference implementation.
VertexExtremum vertex_extremum_serial(const Scenario& scenario,
                                      const std::vector<std::vector<Rational>>& coefficients,
                                      const NcOptions& options = {});

/// OpenMP variant; bit-identical to the serial reference by construction
/// (falls back to it when built without OpenMP).
VertexExtremum vertex_extremum_parallel(const Scenario& scenario,
                                        const std::vector<std::vector<Rational>>& coefficients,
                                        const NcOptions& options = {});

VertexExtremum vertex_extremum(const NcInequality& inequality, const NcOptions& options = {});

}  // namespace hyperctx
