#include "hyperctx/behavior.hpp"

#include "hyperctx/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace hyperctx;

namespace {

const Rational kHalf(1, 2);

Behavior uniform_behavior(const Scenario& scenario) {
    std::vector<std::vector<Rational>> tables;
    for (int c = 0; c < scenario.context_count(); ++c) {
        const std::size_t size = scenario.context_table_size(c);
        tables.emplace_back(size, Rational(1, static_cast<long>(size)));
    }
    return Behavior(scenario, std::move(tables));
}

}  // namespace

TEST_CASE("behavior construction validates tables") {
    const Scenario s = build_n_cycle(5);
    std::vector<std::vector<Rational>> good(5, std::vector<Rational>{0, kHalf, kHalf, 0});

    CHECK_NOTHROW(Behavior(s, good));

    SUBCASE("wrong table count") {
        auto tables = good;
        tables.pop_back();
        CHECK_THROWS_AS(Behavior(s, tables), ValidationError);
    }
    SUBCASE("wrong table size") {
        auto tables = good;
        tables[2].push_back(0);
        CHECK_THROWS_AS(Behavior(s, tables), ValidationError);
    }
    SUBCASE("negative probability") {
        auto tables = good;
        tables[1] = {Rational(-1, 2), 1, kHalf, 0};
        CHECK_THROWS_AS(Behavior(s, tables), ValidationError);
    }
    SUBCASE("non-unit sum") {
        auto tables = good;
        tables[3] = {0, kHalf, kHalf, kHalf};
        CHECK_THROWS_AS(Behavior(s, tables), ValidationError);
        try {
            Behavior(s, tables);
        } catch (const ValidationError& e) {
            REQUIRE_FALSE(e.issues().empty());
            CHECK(e.issues()[0].code == "InvalidBehavior");
        }
    }
}

TEST_CASE("named behaviors have the advertised tables") {
    const Behavior toss = generalized_coin_toss();
    CHECK(toss.scenario() == build_n_cycle(5));
    for (int c = 0; c < 5; ++c) {
        CHECK(toss.table(c) == std::vector<Rational>{0, kHalf, kHalf, 0});
    }

    const Behavior rearranged = rearranged_device_behavior();
    for (int c = 0; c < 4; ++c) {
        CHECK(rearranged.table(c) == std::vector<Rational>{0, kHalf, kHalf, 0});
    }
    CHECK(rearranged.table(4) == std::vector<Rational>{kHalf, 0, 0, kHalf});

    CHECK_THROWS_AS(toss.table(5), Error);
}

TEST_CASE("marginalization") {
    const Behavior toss = generalized_coin_toss();

    SUBCASE("single-measurement marginals are fair") {
        for (int c = 0; c < 5; ++c) {
            for (int m : toss.scenario().context(c)) {
                const auto marginal = marginalize(toss, c, {m});
                CHECK(marginal.subset == std::vector<int>{m});
                CHECK(marginal.table == std::vector<Rational>{kHalf, kHalf});
            }
        }
    }

    SUBCASE("marginal onto the full context is the table itself") {
        const auto marginal = marginalize(toss, 0, {0, 1});
        CHECK(marginal.table == toss.table(0));
    }

    SUBCASE("subset order does not matter") {
        const auto a = marginalize(toss, 4, {0, 4});
        const auto b = marginalize(toss, 4, {4, 0});
        CHECK(a.table == b.table);
        CHECK(a.subset == b.subset);
    }

    SUBCASE("subset must be non-empty and inside the context") {
        CHECK_THROWS_AS(marginalize(toss, 0, {2}), Error);
        CHECK_THROWS_AS(marginalize(toss, 0, {}), Error);
        try {
            marginalize(toss, 0, {0, 2});
        } catch (const Error& e) {
            CHECK(e.code() == "SubsetNotInContext");
        }
    }
}

TEST_CASE("marginalization chains consistently") {
    // A single three-measurement context, uniform table over 8 joint outcomes.
    RawScenario raw;
    raw.measurements = {"X", "Y", "Z"};
    raw.outcomes = {"⊥", "⊤"};
    raw.contexts = {{"X", "Y", "Z"}};
    const Scenario s = Scenario::validated(raw);
    const Behavior b = uniform_behavior(s);

    const auto direct = marginalize(b, 0, {0});
    const auto step = marginalize(marginalize(b, 0, {0, 1}), s.outcome_count(), {0});
    CHECK(direct.table == step.table);
    CHECK(direct.table == std::vector<Rational>{kHalf, kHalf});

    // Restricting a marginal outside its domain is rejected too.
    const auto pair = marginalize(b, 0, {0, 1});
    CHECK_THROWS_AS(marginalize(pair, s.outcome_count(), {2}), Error);
}

TEST_CASE("nondisturbance holds for the named behaviors") {
    CHECK(check_nondisturbance(generalized_coin_toss()).nondisturbing);
    CHECK(check_nondisturbance(rearranged_device_behavior()).nondisturbing);
    CHECK(check_nondisturbance(uniform_behavior(build_n_cycle(4))).nondisturbing);
    CHECK(check_nondisturbance(generalized_coin_toss()).violations.empty());
}

TEST_CASE("nondisturbance violations are located exactly") {
    const Scenario s = build_n_cycle(5);
    // Point mass (⊥,⊥) on C1 forces p(A1=⊥) = 1 there, but C0 says 1/2.
    std::vector<std::vector<Rational>> tables(5, std::vector<Rational>{0, kHalf, kHalf, 0});
    tables[1] = {1, 0, 0, 0};
    const Behavior disturbed(s, tables);

    const auto report = check_nondisturbance(disturbed);
    CHECK_FALSE(report.nondisturbing);
    REQUIRE_FALSE(report.violations.empty());
    bool found = false;
    for (const auto& v : report.violations) {
        if (v.context_a == 0 && v.context_b == 1) {
            found = true;
            CHECK(v.marginal_a.subset == std::vector<int>{1});
            CHECK(v.marginal_a.table == std::vector<Rational>{kHalf, kHalf});
            CHECK(v.marginal_b.table == std::vector<Rational>{1, 0});
        }
    }
    CHECK(found);
}

TEST_CASE("behaviors induced by global distributions are nondisturbing") {
    testsupport::Lcg rng;
    for (int n = 3; n <= 5; ++n) {
        const Scenario s = build_n_cycle(n);
        for (int trial = 0; trial < 20; ++trial) {
            const auto mixture = testsupport::random_mixture(s, rng);
            CHECK(check_nondisturbance(mixture.induced_behavior()).nondisturbing);
        }
    }
}
