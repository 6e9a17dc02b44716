#include "hyperctx/behavior.hpp"

#include <algorithm>

namespace hyperctx {

Behavior::Behavior(Scenario scenario, std::vector<std::vector<Rational>> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
    std::vector<Issue> issues;
    if (static_cast<int>(tables_.size()) != scenario_.context_count()) {
        issues.push_back({"InvalidBehavior", "expected " + std::to_string(scenario_.context_count()) +
                                                 " context tables, got " + std::to_string(tables_.size())});
        throw ValidationError(std::move(issues));
    }
    for (int c = 0; c < scenario_.context_count(); ++c) {
        const auto& table = tables_[c];
        if (table.size() != scenario_.context_table_size(c)) {
            issues.push_back({"InvalidBehavior", "context " + scenario_.context_name(c) + " table has " +
                                                     std::to_string(table.size()) + " entries, expected " +
                                                     std::to_string(scenario_.context_table_size(c))});
            continue;
        }
        Rational sum = 0;
        for (const auto& p : table) {
            if (p < 0 || p > 1) {
                issues.push_back({"InvalidBehavior", "context " + scenario_.context_name(c) +
                                                         " has probability outside [0,1]: " + format_rational(p)});
            }
            sum += p;
        }
        if (sum != 1) {
            issues.push_back({"InvalidBehavior", "context " + scenario_.context_name(c) +
                                                     " table sums to " + format_rational(sum) + ", expected 1"});
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

const std::vector<Rational>& Behavior::table(int context_index) const {
    scenario_.context(context_index);  // range check
    return tables_[context_index];
}

const Rational& Behavior::probability(int context_index, std::size_t joint_rank) const {
    return table(context_index).at(joint_rank);
}

namespace {

// Rank of the restriction of a context joint outcome to a subset of it.
std::size_t subset_rank(const std::vector<int>& members, const std::vector<int>& subset,
                        const std::vector<int>& digits, int base) {
    std::size_t r = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (k < subset.size() && members[i] == subset[k]) {
            r = r * base + digits[i];
            ++k;
        }
    }
    return r;
}

std::vector<Rational> marginal_table(const std::vector<Rational>& table, const std::vector<int>& members,
                                     const std::vector<int>& subset, int base) {
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < subset.size(); ++i) out_size *= base;
    std::vector<Rational> out(out_size, Rational(0));
    for (std::size_t r = 0; r < table.size(); ++r) {
        const auto digits = unrank(r, static_cast<int>(members.size()), base);
        out[subset_rank(members, subset, digits, base)] += table[r];
    }
    return out;
}

}  // namespace

MarginalDistribution marginalize(const Behavior& behavior, int context_index,
                                 const std::vector<int>& subset) {
    const auto& ctx = behavior.scenario().context(context_index);
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (!std::includes(ctx.begin(), ctx.end(), sorted.begin(), sorted.end()) || sorted.empty()) {
        throw Error("SubsetNotInContext",
                    "subset is not a non-empty subset of context " + behavior.scenario().context_name(context_index));
    }
    return {sorted, marginal_table(behavior.table(context_index), ctx, sorted,
                                   behavior.scenario().outcome_count())};
}

MarginalDistribution marginalize(const MarginalDistribution& marginal, int outcome_count,
                                 const std::vector<int>& subset) {
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (!std::includes(marginal.subset.begin(), marginal.subset.end(), sorted.begin(), sorted.end()) ||
        sorted.empty()) {
        throw Error("SubsetNotInContext", "subset is not a non-empty subset of the marginal's domain");
    }
    return {sorted, marginal_table(marginal.table, marginal.subset, sorted, outcome_count)};
}

NondisturbanceReport check_nondisturbance(const Behavior& behavior) {
    const auto& scenario = behavior.scenario();
    NondisturbanceReport report;
    for (int a = 0; a < scenario.context_count(); ++a) {
        for (int b = a + 1; b < scenario.context_count(); ++b) {
            const auto& ca = scenario.context(a);
            const auto& cb = scenario.context(b);
            std::vector<int> common;
            std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
            if (common.empty()) continue;
            auto ma = marginalize(behavior, a, common);
            auto mb = marginalize(behavior, b, common);
            if (ma.table != mb.table) {
                report.nondisturbing = false;
                report.violations.push_back({a, b, std::move(ma), std::move(mb)});
            }
        }
    }
    return report;
}

namespace {

// Pair tables on a dichotomic context in canonical order (⊥,⊥),(⊥,⊤),(⊤,⊥),(⊤,⊤).
// Anti-correlation and correlation are symmetric in the member order, so these
// tables are valid for every context regardless of which member sorts first.
std::vector<Rational> anticorrelated_pair() {
    return {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)};
}

std::vector<Rational> correlated_pair() {
    return {Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)};
}

}  // namespace

Behavior generalized_coin_toss() {
    Scenario scenario = build_n_cycle(5);
    std::vector<std::vector<Rational>> tables(5, anticorrelated_pair());
    return Behavior(std::move(scenario), std::move(tables));
}

Behavior rearranged_device_behavior() {
    Scenario scenario = build_n_cycle(5);
    std::vector<std::vector<Rational>> tables(4, anticorrelated_pair());
    tables.push_back(correlated_pair());
    return Behavior(std::move(scenario), std::move(tables));
}

}  // namespace hyperctx
