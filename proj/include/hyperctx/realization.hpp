#pragma once

#include "hyperctx/behavior.hpp"
#include "hyperctx/polytope.hpp"
#include "hyperctx/rational.hpp"
#include "hyperctx/scenario.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hyperctx {

/// A classical (hidden-variable) realization: a finite state space Λ, a
/// rational probability measure on it, and one total response function per
/// measurement, stored as outcome indices. The σ-algebra is the power set.
class ClassicalRealization {
  public:
    /// responses[m][λ] is the outcome index f_{A_m}(λ). Validates measure
    /// nonnegativity and exact unit total, plus totality of every response.
    ClassicalRealization(Scenario scenario, std::vector<std::string> state_labels,
                         std::vector<Rational> measure, std::vector<std::vector<int>> responses);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<std::string>& state_labels() const { return state_labels_; }
    const std::vector<Rational>& measure() const { return measure_; }
    const std::vector<std::vector<int>>& responses() const { return responses_; }
    std::size_t state_count() const { return state_labels_.size(); }

  private:
    Scenario scenario_;
    std::vector<std::string> state_labels_;
    std::vector<Rational> measure_;
    std::vector<std::vector<int>> responses_;
};

/// The behavior the realization generates: p(s|C) = μ(∩_{A∈C} f_A⁻¹(s_A)),
/// accumulated exactly. For the diagonal quantum lift this same sum is the
/// Born rule tr(ρ·∏P) evaluated in rational diagonal arithmetic, so it doubles
/// as the exact Born path for lifted realizations.
Behavior induced_behavior(const ClassicalRealization& realization);

struct ClassicalDiscrepancy {
    int context_index = -1;
    std::size_t joint_rank = 0;
    Rational expected;  // behavior table entry
    Rational actual;    // measure of the response preimage
};

struct ClassicalReport {
    bool verified = true;
    std::vector<ClassicalDiscrepancy> discrepancies;
};

/// Exact comparison, no tolerance: every context table entry must equal the
/// measure of its preimage. Throws Error("ScenarioMismatch").
ClassicalReport verify_classical(const ClassicalRealization& realization, const Behavior& behavior);

/// Noncontextuality made classical: Λ = the set of global assignments, μ = the
/// witness table, f_A = evaluation of the assignment at A. The result verifies
/// against the witness's induced behavior by construction.
ClassicalRealization nc_to_classical(const GlobalDistribution& witness);

/// A quantum realization: density matrix ρ, one self-adjoint observable per
/// measurement, and per-measurement eigenprojectors indexed by outcome.
/// Construction checks shape only (matching dimensions and counts); the
/// numeric invariants (ρ PSD with unit trace, self-adjointness, projector
/// idempotence/orthogonality/completeness) live in validate_structure so that
/// deliberately broken realizations can still be built and fed to
/// verify_quantum.
class QuantumRealization {
  public:
    QuantumRealization(Scenario scenario, int dimension, Eigen::MatrixXcd state,
                       std::vector<Eigen::MatrixXcd> observables,
                       std::vector<std::vector<Eigen::MatrixXcd>> projectors);

    const Scenario& scenario() const { return scenario_; }
    int dimension() const { return dimension_; }
    const Eigen::MatrixXcd& state() const { return state_; }
    const std::vector<Eigen::MatrixXcd>& observables() const { return observables_; }
    /// projectors()[m][o] is P^{(A_m)}_o.
    const std::vector<std::vector<Eigen::MatrixXcd>>& projectors() const { return projectors_; }

    /// In-place projector replacement for fault-injection paths. Shape-checked.
    void replace_projector(int measurement, int outcome, Eigen::MatrixXcd projector);

  private:
    Scenario scenario_;
    int dimension_ = 0;
    Eigen::MatrixXcd state_;
    std::vector<Eigen::MatrixXcd> observables_;
    std::vector<std::vector<Eigen::MatrixXcd>> projectors_;
};

inline constexpr double kQuantumTolerance = 1e-9;

/// Numeric type invariants, each violation one Issue: ρ self-adjoint, PSD,
/// unit trace; T_A self-adjoint; projectors idempotent, mutually orthogonal
/// per measurement, summing to the identity. Empty result means sound.
std::vector<Issue> validate_structure(const QuantumRealization& realization,
                                      double tolerance = kQuantumTolerance);

struct QuantumReport {
    bool verified = true;
    // First failing condition: "a" (outcome-projector bijection), "b" (context
    // commutation), or "c" (Born-rule match), with its witness values.
    std::string failed_condition;
    std::string detail;
};

/// Ordered checks (a) every outcome's projector is nonzero, (b) observables
/// commute within every context, ‖[T_A,T_B]‖_F ≤ τ, (c) Born-rule traces match
/// the behavior within τ. Stops at the first failure.
/// Throws Error("ScenarioMismatch").
QuantumReport verify_quantum(const QuantumRealization& realization, const Behavior& behavior,
                             double tolerance = kQuantumTolerance);

/// Diagonal lift: dimension |Λ|, ρ = diag(μ), T_A = diag of the outcome
/// encoding of f_A, projectors = diagonal indicators of response preimages.
/// Encoding: ⊤ ↦ +1, ⊥ ↦ −1 when the outcome set is exactly {⊥,⊤}; otherwise
/// the outcome's index, which is injective for any outcome set.
QuantumRealization classical_to_quantum(const ClassicalRealization& realization);

}  // namespace hyperctx
