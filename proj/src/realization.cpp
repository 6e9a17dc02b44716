#include "hyperctx/realization.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

namespace hyperctx {

ClassicalRealization::ClassicalRealization(Scenario scenario, std::vector<std::string> state_labels,
                                           std::vector<Rational> measure,
                                           std::vector<std::vector<int>> responses)
    : scenario_(std::move(scenario)),
      state_labels_(std::move(state_labels)),
      measure_(std::move(measure)),
      responses_(std::move(responses)) {
    std::vector<Issue> issues;
    if (state_labels_.empty()) {
        issues.push_back({"InvalidRealization", "empty hidden-state space"});
    }
    if (measure_.size() != state_labels_.size()) {
        issues.push_back({"InvalidRealization", "measure defined on " + std::to_string(measure_.size()) +
                                                    " states, expected " + std::to_string(state_labels_.size())});
    } else {
        Rational total = 0;
        for (const auto& mu : measure_) {
            if (mu < 0) issues.push_back({"InvalidRealization", "negative measure " + format_rational(mu)});
            total += mu;
        }
        if (!state_labels_.empty() && total != 1) {
            issues.push_back({"InvalidRealization", "measure sums to " + format_rational(total) + ", expected 1"});
        }
    }
    if (responses_.size() != static_cast<std::size_t>(scenario_.measurement_count())) {
        issues.push_back({"InvalidRealization", "expected one response function per measurement"});
    } else {
        for (int m = 0; m < scenario_.measurement_count(); ++m) {
            if (responses_[m].size() != state_labels_.size()) {
                issues.push_back({"InvalidRealization", "response for " + scenario_.measurement_label(m) +
                                                            " is not total on the state space"});
                continue;
            }
            for (int o : responses_[m]) {
                if (o < 0 || o >= scenario_.outcome_count()) {
                    issues.push_back({"InvalidRealization", "response for " + scenario_.measurement_label(m) +
                                                                " maps outside the outcome set"});
                    break;
                }
            }
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

Behavior induced_behavior(const ClassicalRealization& realization) {
    const auto& scenario = realization.scenario();
    std::vector<std::vector<Rational>> tables;
    tables.reserve(scenario.context_count());
    for (int c = 0; c < scenario.context_count(); ++c) {
        const auto& ctx = scenario.context(c);
        std::vector<Rational> table(scenario.context_table_size(c), Rational(0));
        for (std::size_t lambda = 0; lambda < realization.state_count(); ++lambda) {
            std::size_t rank = 0;
            for (int m : ctx) rank = rank * scenario.outcome_count() + realization.responses()[m][lambda];
            table[rank] += realization.measure()[lambda];
        }
        tables.push_back(std::move(table));
    }
    return Behavior(scenario, std::move(tables));
}

ClassicalReport verify_classical(const ClassicalRealization& realization, const Behavior& behavior) {
    if (realization.scenario() != behavior.scenario()) {
        throw Error("ScenarioMismatch", "realization and behavior live on different scenarios");
    }
    const Behavior generated = induced_behavior(realization);
    ClassicalReport report;
    for (int c = 0; c < behavior.scenario().context_count(); ++c) {
        const auto& expected = behavior.table(c);
        const auto& actual = generated.table(c);
        for (std::size_t s = 0; s < expected.size(); ++s) {
            if (expected[s] != actual[s]) {
                report.verified = false;
                report.discrepancies.push_back({c, s, expected[s], actual[s]});
            }
        }
    }
    return report;
}

ClassicalRealization nc_to_classical(const GlobalDistribution& witness) {
    const auto& scenario = witness.scenario();
    const std::size_t states = witness.table().size();
    const int n = scenario.measurement_count();
    const int base = scenario.outcome_count();

    std::vector<std::string> labels;
    labels.reserve(states);
    std::vector<std::vector<int>> responses(n, std::vector<int>(states, 0));
    for (std::size_t t = 0; t < states; ++t) {
        const auto digits = unrank(t, n, base);
        std::string label;
        for (int m = 0; m < n; ++m) {
            if (m > 0) label += ",";
            label += scenario.outcome_label(digits[m]);
            responses[m][t] = digits[m];
        }
        labels.push_back(std::move(label));
    }
    return ClassicalRealization(scenario, std::move(labels), witness.table(), std::move(responses));
}

QuantumRealization::QuantumRealization(Scenario scenario, int dimension, Eigen::MatrixXcd state,
                                       std::vector<Eigen::MatrixXcd> observables,
                                       std::vector<std::vector<Eigen::MatrixXcd>> projectors)
    : scenario_(std::move(scenario)),
      dimension_(dimension),
      state_(std::move(state)),
      observables_(std::move(observables)),
      projectors_(std::move(projectors)) {
    std::vector<Issue> issues;
    if (dimension_ <= 0) {
        issues.push_back({"DimensionMismatch", "dimension must be positive"});
        throw ValidationError(std::move(issues));
    }
    auto check_shape = [&](const Eigen::MatrixXcd& mat, const std::string& name) {
        if (mat.rows() != dimension_ || mat.cols() != dimension_) {
            issues.push_back({"DimensionMismatch", name + " is " + std::to_string(mat.rows()) + "x" +
                                                       std::to_string(mat.cols()) + ", expected " +
                                                       std::to_string(dimension_) + "x" +
                                                       std::to_string(dimension_)});
        }
    };
    check_shape(state_, "state");
    if (observables_.size() != static_cast<std::size_t>(scenario_.measurement_count())) {
        issues.push_back({"DimensionMismatch", "expected one observable per measurement"});
    } else {
        for (int m = 0; m < scenario_.measurement_count(); ++m) {
            check_shape(observables_[m], "observable " + scenario_.measurement_label(m));
        }
    }
    if (projectors_.size() != static_cast<std::size_t>(scenario_.measurement_count())) {
        issues.push_back({"DimensionMismatch", "expected one projector family per measurement"});
    } else {
        for (int m = 0; m < scenario_.measurement_count(); ++m) {
            if (projectors_[m].size() != static_cast<std::size_t>(scenario_.outcome_count())) {
                issues.push_back({"DimensionMismatch", "measurement " + scenario_.measurement_label(m) +
                                                           " needs one projector per outcome"});
                continue;
            }
            for (int o = 0; o < scenario_.outcome_count(); ++o) {
                check_shape(projectors_[m][o], "projector " + scenario_.measurement_label(m) + "/" +
                                                   scenario_.outcome_label(o));
            }
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

void QuantumRealization::replace_projector(int measurement, int outcome, Eigen::MatrixXcd projector) {
    if (measurement < 0 || measurement >= scenario_.measurement_count() || outcome < 0 ||
        outcome >= scenario_.outcome_count()) {
        throw Error("UnknownMeasurement", "projector index out of range");
    }
    if (projector.rows() != dimension_ || projector.cols() != dimension_) {
        throw Error("DimensionMismatch", "replacement projector has the wrong shape");
    }
    projectors_[measurement][outcome] = std::move(projector);
}

namespace {

double hermiticity_defect(const Eigen::MatrixXcd& mat) {
    return (mat - mat.adjoint()).norm();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

std::vector<Issue> validate_structure(const QuantumRealization& realization, double tolerance) {
    std::vector<Issue> issues;
    const auto& scenario = realization.scenario();
    const int d = realization.dimension();
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);

    const auto& rho = realization.state();
    if (hermiticity_defect(rho) > tolerance) {
        issues.push_back({"StateNotSelfAdjoint", "‖ρ − ρ†‖ = " + fmt(hermiticity_defect(rho))});
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
        const double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -tolerance) {
            issues.push_back({"StateNotPSD", "least eigenvalue " + fmt(min_eig)});
        }
    }
    const double trace_defect = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_defect > tolerance) {
        issues.push_back({"StateTraceNotOne", "|tr ρ − 1| = " + fmt(trace_defect)});
    }

    for (int m = 0; m < scenario.measurement_count(); ++m) {
        const auto& label = scenario.measurement_label(m);
        if (hermiticity_defect(realization.observables()[m]) > tolerance) {
            issues.push_back({"ObservableNotSelfAdjoint", label});
        }
        const auto& family = realization.projectors()[m];
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
        for (int o = 0; o < scenario.outcome_count(); ++o) {
            const auto& p = family[o];
            if ((p * p - p).norm() > tolerance) {
                issues.push_back({"ProjectorNotIdempotent", label + "/" + scenario.outcome_label(o)});
            }
            for (int o2 = o + 1; o2 < scenario.outcome_count(); ++o2) {
                if ((p * family[o2]).norm() > tolerance) {
                    issues.push_back({"ProjectorsNotOrthogonal",
                                      label + ": " + scenario.outcome_label(o) + " vs " +
                                          scenario.outcome_label(o2)});
                }
            }
            sum += p;
        }
        if ((sum - identity).norm() > tolerance) {
            issues.push_back({"ProjectorsNotComplete", label + ": ‖ΣP − I‖ = " + fmt((sum - identity).norm())});
        }
    }
    return issues;
}

QuantumReport verify_quantum(const QuantumRealization& realization, const Behavior& behavior,
                             double tolerance) {
    if (realization.scenario() != behavior.scenario()) {
        throw Error("ScenarioMismatch", "realization and behavior live on different scenarios");
    }
    const auto& scenario = behavior.scenario();
    QuantumReport report;

    // (a) outcome set in bijection with the spectrum: every outcome's
    // projector must be nonzero.
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        for (int o = 0; o < scenario.outcome_count(); ++o) {
            if (realization.projectors()[m][o].norm() <= tolerance) {
                report.verified = false;
                report.failed_condition = "a";
                report.detail = "projector for " + scenario.measurement_label(m) + "/" +
                                scenario.outcome_label(o) + " is zero";
                return report;
            }
        }
    }

    // (b) commutation inside every context.
    for (int c = 0; c < scenario.context_count(); ++c) {
        const auto& ctx = scenario.context(c);
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            for (std::size_t j = i + 1; j < ctx.size(); ++j) {
                const auto& ta = realization.observables()[ctx[i]];
                const auto& tb = realization.observables()[ctx[j]];
                const double defect = (ta * tb - tb * ta).norm();
                if (defect > tolerance) {
                    report.verified = false;
                    report.failed_condition = "b";
                    report.detail = "‖[" + scenario.measurement_label(ctx[i]) + "," +
                                    scenario.measurement_label(ctx[j]) + "]‖ = " + fmt(defect) +
                                    " in context " + scenario.context_name(c);
                    return report;
                }
            }
        }
    }

    // (c) Born rule: tr(ρ ∏ P) against the behavior, context by context.
    const int d = realization.dimension();
    for (int c = 0; c < scenario.context_count(); ++c) {
        const auto& ctx = scenario.context(c);
        const auto joints = enumerate_joint_outcomes(scenario, c);
        const auto& table = behavior.table(c);
        for (std::size_t s = 0; s < joints.size(); ++s) {
            Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(d, d);
            for (std::size_t k = 0; k < ctx.size(); ++k) {
                product = product * realization.projectors()[ctx[k]][joints[s].outcomes[k]];
            }
            const std::complex<double> born = (realization.state() * product).trace();
            const double expected = static_cast<double>(table[s]);
            const double defect = std::abs(born - std::complex<double>(expected, 0.0));
            if (defect > tolerance) {
                report.verified = false;
                report.failed_condition = "c";
                report.detail = "context " + scenario.context_name(c) + ", joint outcome " +
                                std::to_string(s) + ": Born " + fmt(born.real()) + " vs behavior " +
                                fmt(expected) + " (|Δ| = " + fmt(defect) + ")";
                return report;
            }
        }
    }
    return report;
}

QuantumRealization classical_to_quantum(const ClassicalRealization& realization) {
    const auto& scenario = realization.scenario();
    const int d = static_cast<int>(realization.state_count());

    // Outcome encoding: ±1 for the dichotomic set {⊥,⊤}, outcome index
    // otherwise. Injective either way, so the spectrum of T_A separates the
    // outcomes whenever every outcome is attained.
    std::vector<double> encoding(scenario.outcome_count());
    const int bot = scenario.outcome_index("⊥");
    const int top = scenario.outcome_index("⊤");
    if (scenario.outcome_count() == 2 && bot >= 0 && top >= 0) {
        encoding[bot] = -1.0;
        encoding[top] = +1.0;
    } else {
        for (int o = 0; o < scenario.outcome_count(); ++o) encoding[o] = static_cast<double>(o);
    }

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) rho(i, i) = static_cast<double>(realization.measure()[i]);

    std::vector<Eigen::MatrixXcd> observables;
    std::vector<std::vector<Eigen::MatrixXcd>> projectors;
    observables.reserve(scenario.measurement_count());
    projectors.reserve(scenario.measurement_count());
    for (int m = 0; m < scenario.measurement_count(); ++m) {
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
        std::vector<Eigen::MatrixXcd> family(scenario.outcome_count(), Eigen::MatrixXcd::Zero(d, d));
        for (int i = 0; i < d; ++i) {
            const int o = realization.responses()[m][i];
            t(i, i) = encoding[o];
            family[o](i, i) = 1.0;
        }
        observables.push_back(std::move(t));
        projectors.push_back(std::move(family));
    }
    return QuantumRealization(scenario, d, std::move(rho), std::move(observables), std::move(projectors));
}

}  // namespace hyperctx
