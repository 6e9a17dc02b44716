#include "hyperctx/polytope.hpp"

#include "hyperctx/simplex.hpp"

#include <algorithm>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperctx {

GlobalDistribution::GlobalDistribution(Scenario scenario, std::vector<Rational> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
    std::vector<Issue> issues;
    const std::size_t cap = std::max(table_.size(), NcOptions{}.max_global_assignments);
    const std::size_t expected = scenario_.global_assignment_count(cap);
    if (table_.size() != expected) {
        issues.push_back({"InvalidDistribution", "expected " + std::to_string(expected) + " entries, got " +
                                                     std::to_string(table_.size())});
        throw ValidationError(std::move(issues));
    }
    Rational sum = 0;
    for (const auto& p : table_) {
        if (p < 0) {
            issues.push_back({"InvalidDistribution", "negative probability " + format_rational(p)});
        }
        sum += p;
    }
    if (sum != 1) {
        issues.push_back({"InvalidDistribution", "table sums to " + format_rational(sum) + ", expected 1"});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace {

// Extracts the context-table rank of a global assignment directly from its
// assignment rank, without materializing the digit vector.
struct ContextRank {
    std::vector<std::pair<std::size_t, std::size_t>> terms;  // (divisor, multiplier)
    std::size_t base = 2;

    static ContextRank build(const Scenario& scenario, int context_index) {
        ContextRank cr;
        cr.base = static_cast<std::size_t>(scenario.outcome_count());
        const auto& ctx = scenario.context(context_index);
        const int n = scenario.measurement_count();
        for (std::size_t k = 0; k < ctx.size(); ++k) {
            std::size_t divisor = 1;
            for (int i = 0; i < n - 1 - ctx[k]; ++i) divisor *= cr.base;
            std::size_t multiplier = 1;
            for (std::size_t i = 0; i < ctx.size() - 1 - k; ++i) multiplier *= cr.base;
            cr.terms.emplace_back(divisor, multiplier);
        }
        return cr;
    }

    std::size_t operator()(std::size_t assignment_rank) const {
        std::size_t r = 0;
        for (const auto& [divisor, multiplier] : terms) {
            r += ((assignment_rank / divisor) % base) * multiplier;
        }
        return r;
    }
};

std::vector<ContextRank> context_rank_extractors(const Scenario& scenario) {
    std::vector<ContextRank> extractors;
    extractors.reserve(scenario.context_count());
    for (int c = 0; c < scenario.context_count(); ++c) {
        extractors.push_back(ContextRank::build(scenario, c));
    }
    return extractors;
}

}  // namespace

Behavior GlobalDistribution::induced_behavior() const {
    const auto extractors = context_rank_extractors(scenario_);
    std::vector<std::vector<Rational>> tables;
    tables.reserve(scenario_.context_count());
    for (int c = 0; c < scenario_.context_count(); ++c) {
        std::vector<Rational> table(scenario_.context_table_size(c), Rational(0));
        for (std::size_t t = 0; t < table_.size(); ++t) {
            table[extractors[c](t)] += table_[t];
        }
        tables.push_back(std::move(table));
    }
    return Behavior(scenario_, std::move(tables));
}

NcInequality::NcInequality(Scenario scenario, std::vector<std::vector<Rational>> coefficients,
                           Rational bound, Direction direction)
    : scenario_(std::move(scenario)),
      coefficients_(std::move(coefficients)),
      bound_(std::move(bound)),
      direction_(direction) {
    std::vector<Issue> issues;
    if (static_cast<int>(coefficients_.size()) != scenario_.context_count()) {
        issues.push_back({"InvalidInequality", "coefficient tables do not match the context count"});
        throw ValidationError(std::move(issues));
    }
    bool any_nonzero = false;
    for (int c = 0; c < scenario_.context_count(); ++c) {
        if (coefficients_[c].size() != scenario_.context_table_size(c)) {
            issues.push_back({"InvalidInequality",
                              "coefficient table for context " + scenario_.context_name(c) + " has wrong size"});
        } else {
            for (const auto& q : coefficients_[c]) {
                if (q != 0) any_nonzero = true;
            }
        }
    }
    if (issues.empty() && !any_nonzero) {
        issues.push_back({"InvalidInequality", "all coefficients are zero"});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

InequalityEvaluation evaluate_inequality(const Behavior& behavior, const NcInequality& inequality) {
    if (behavior.scenario() != inequality.scenario()) {
        throw Error("ScenarioMismatch", "behavior and inequality live on different scenarios");
    }
    Rational value = 0;
    for (int c = 0; c < behavior.scenario().context_count(); ++c) {
        const auto& coeffs = inequality.coefficients()[c];
        const auto& table = behavior.table(c);
        for (std::size_t s = 0; s < table.size(); ++s) value += coeffs[s] * table[s];
    }
    const bool satisfied = inequality.direction() == Direction::GreaterEqual ? value >= inequality.bound()
                                                                             : value <= inequality.bound();
    return {std::move(value), satisfied};
}

VertexExtremum vertex_extremum_serial(const Scenario& scenario,
                                      const std::vector<std::vector<Rational>>& coefficients,
                                      const NcOptions& options) {
    const std::size_t total = scenario.global_assignment_count(options.max_global_assignments);
    const auto extractors = context_rank_extractors(scenario);
    VertexExtremum ext;
    for (std::size_t t = 0; t < total; ++t) {
        Rational value = 0;
        for (std::size_t c = 0; c < extractors.size(); ++c) value += coefficients[c][extractors[c](t)];
        if (t == 0 || value < ext.min_value) {
            ext.min_value = value;
            ext.argmin = t;
        }
        if (t == 0 || value > ext.max_value) {
            ext.max_value = value;
            ext.argmax = t;
        }
    }
    return ext;
}

VertexExtremum vertex_extremum_parallel(const Scenario& scenario,
                                        const std::vector<std::vector<Rational>>& coefficients,
                                        const NcOptions& options) {
#ifdef _OPENMP
    const std::size_t total = scenario.global_assignment_count(options.max_global_assignments);
    const auto extractors = context_rank_extractors(scenario);
    VertexExtremum ext;
    bool seeded = false;
#pragma omp parallel
    {
        VertexExtremum local;
        bool local_seeded = false;
#pragma omp for schedule(static) nowait
        for (long long ti = 0; ti < static_cast<long long>(total); ++ti) {
            const std::size_t t = static_cast<std::size_t>(ti);
            Rational value = 0;
            for (std::size_t c = 0; c < extractors.size(); ++c) value += coefficients[c][extractors[c](t)];
            if (!local_seeded || value < local.min_value) {
                local.min_value = value;
                local.argmin = t;
            }
            if (!local_seeded || value > local.max_value) {
                local.max_value = value;
                local.argmax = t;
            }
            local_seeded = true;
        }
#pragma omp critical
        {
            if (local_seeded) {
                // Ties resolve to the least assignment rank, matching the
                // serial scan order.
                if (!seeded || local.min_value < ext.min_value ||
                    (local.min_value == ext.min_value && local.argmin < ext.argmin)) {
                    ext.min_value = local.min_value;
                    ext.argmin = local.argmin;
                }
                if (!seeded || local.max_value > ext.max_value ||
                    (local.max_value == ext.max_value && local.argmax < ext.argmax)) {
                    ext.max_value = local.max_value;
                    ext.argmax = local.argmax;
                }
                seeded = true;
            }
        }
    }
    return ext;
#else
    return vertex_extremum_serial(scenario, coefficients, options);
#endif
}

VertexExtremum vertex_extremum(const NcInequality& inequality, const NcOptions& options) {
    return vertex_extremum_parallel(inequality.scenario(), inequality.coefficients(), options);
}

NcInequality cycle_inequality(const Scenario& scenario) {
    if (scenario.outcome_count() != 2) {
        throw Error("NotACycle", "cycle correlations need dichotomic outcomes");
    }
    for (int c = 0; c < scenario.context_count(); ++c) {
        if (scenario.context(c).size() != 2) {
            throw Error("NotACycle", "context " + scenario.context_name(c) + " is not a pair");
        }
    }
    // <Ai A(i+1)> as a table functional: +1 where the pair agrees, -1 where it
    // differs; canonical pair order is (⊥,⊥),(⊥,⊤),(⊤,⊥),(⊤,⊤).
    std::vector<std::vector<Rational>> coefficients(
        scenario.context_count(), {Rational(1), Rational(-1), Rational(-1), Rational(1)});
    const Rational bound = vertex_extremum_serial(scenario, coefficients, {}).min_value;
    return NcInequality(scenario, std::move(coefficients), bound, Direction::GreaterEqual);
}

NcInequality kcbs_inequality() { return cycle_inequality(build_n_cycle(5)); }

std::vector<Behavior> deterministic_vertices(const Scenario& scenario, const NcOptions& options) {
    const std::size_t total = scenario.global_assignment_count(options.max_global_assignments);
    const auto extractors = context_rank_extractors(scenario);
    std::vector<Behavior> vertices;
    vertices.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<std::vector<Rational>> tables;
        tables.reserve(scenario.context_count());
        for (int c = 0; c < scenario.context_count(); ++c) {
            std::vector<Rational> table(scenario.context_table_size(c), Rational(0));
            table[extractors[c](t)] = 1;
            tables.push_back(std::move(table));
        }
        vertices.emplace_back(scenario, std::move(tables));
    }
    return vertices;
}

namespace {

// Rescales a Farkas row vector to integer coefficients with gcd 1.
void normalize_to_integers(std::vector<std::vector<Rational>>& coefficients) {
    Integer lcm_den = 1;
    for (const auto& table : coefficients) {
        for (const auto& q : table) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
    }
    Integer gcd_num = 0;
    for (const auto& table : coefficients) {
        for (const auto& q : table) {
            const Integer scaled = numerator(q) * (lcm_den / denominator(q));
            gcd_num = boost::multiprecision::gcd(gcd_num, scaled);
        }
    }
    if (gcd_num == 0) gcd_num = 1;
    const Rational factor(lcm_den, gcd_num);
    for (auto& table : coefficients) {
        for (auto& q : table) q *= factor;
    }
}

}  // namespace

NcDecision decide_noncontextual(const Behavior& behavior, const NcOptions& options) {
    const auto& scenario = behavior.scenario();
    const std::size_t n_vars = scenario.global_assignment_count(options.max_global_assignments);
    const auto extractors = context_rank_extractors(scenario);

    // One equality row per (context, joint outcome). Each context block sums
    // to the normalization constraint, so no separate normalization row is
    // added: it would be redundant with every block.
    std::vector<std::size_t> row_base(scenario.context_count(), 0);
    std::size_t n_rows = 0;
    for (int c = 0; c < scenario.context_count(); ++c) {
        row_base[c] = n_rows;
        n_rows += scenario.context_table_size(c);
    }

    std::vector<std::vector<Rational>> matrix(n_rows, std::vector<Rational>(n_vars, Rational(0)));
    std::vector<Rational> rhs(n_rows, Rational(0));
    for (int c = 0; c < scenario.context_count(); ++c) {
        for (std::size_t t = 0; t < n_vars; ++t) {
            matrix[row_base[c] + extractors[c](t)][t] = 1;
        }
        const auto& table = behavior.table(c);
        for (std::size_t s = 0; s < table.size(); ++s) rhs[row_base[c] + s] = table[s];
    }

    const FeasibilityResult lp = solve_equality_feasibility(matrix, rhs);

    NcDecision decision;
    if (lp.feasible) {
        decision.verdict = Verdict::Noncontextual;
        decision.witness = GlobalDistribution(scenario, lp.point);
        return decision;
    }

    // Reassemble the Farkas dual into inequality form: with y the dual row,
    // sum_{c,s} y(c,s) p(s|C) <= max over deterministic vertices holds for
    // every noncontextual behavior and fails strictly on the input.
    std::vector<std::vector<Rational>> coefficients;
    coefficients.reserve(scenario.context_count());
    for (int c = 0; c < scenario.context_count(); ++c) {
        const std::size_t size = scenario.context_table_size(c);
        coefficients.emplace_back(lp.farkas.begin() + row_base[c], lp.farkas.begin() + row_base[c] + size);
    }
    normalize_to_integers(coefficients);
    const Rational bound = vertex_extremum_parallel(scenario, coefficients, options).max_value;
    NcInequality certificate(scenario, std::move(coefficients), bound, Direction::LessEqual);

    decision.verdict = Verdict::Contextual;
    decision.certificate_value = evaluate_inequality(behavior, certificate).value;
    decision.certificate = std::move(certificate);
    return decision;
}

SectionCheck verify_global_section(const Behavior& behavior, const GlobalDistribution& candidate) {
    if (behavior.scenario() != candidate.scenario()) {
        throw Error("ScenarioMismatch", "behavior and candidate live on different scenarios");
    }
    const Behavior induced = candidate.induced_behavior();
    SectionCheck check;
    for (int c = 0; c < behavior.scenario().context_count(); ++c) {
        const auto& expected = behavior.table(c);
        const auto& actual = induced.table(c);
        for (std::size_t s = 0; s < expected.size(); ++s) {
            if (expected[s] != actual[s]) {
                check.matches = false;
                check.mismatches.push_back({c, s, expected[s], actual[s]});
            }
        }
    }
    return check;
}

}  // namespace hyperctx
