#include "hyperctx/device.hpp"

#include "hyperctx/behavior.hpp"
#include "hyperctx/errors.hpp"
#include "hyperctx/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

using namespace hyperctx;

namespace {

bool has_issue(const std::vector<Issue>& issues, const std::string& code) {
    for (const auto& i : issues) {
        if (i.code == code) return true;
    }
    return false;
}

PressRandomness fixed_word(std::uint64_t word) {
    PressRandomness r;
    r.word = word;
    r.path = "test";
    return r;
}

}  // namespace

TEST_CASE("the canonical decagon is a valid device") {
    const DeviceConfig config = default_device();
    CHECK(validate_device(config).empty());
    CHECK(config.colors == 5);
    REQUIRE(config.sectors.size() == 10);

    // Sector k carries color k mod 5, dark iff k even; so sector 2 is dark
    // color 2 and sector 7 is its light antipode.
    CHECK(config.sectors[2].color == 2);
    CHECK(config.sectors[2].shade == Shade::Dark);
    CHECK(config.sectors[7].color == 2);
    CHECK(config.sectors[7].shade == Shade::Light);
    for (int k = 0; k < 10; ++k) {
        CHECK(config.sectors[k].color == k % 5);
        CHECK((config.sectors[k].shade == Shade::Dark) == (k % 2 == 0));
    }

    CHECK(device_scenario(config) == build_n_cycle(5));
    CHECK(validate_device(overlapped_device(0)).empty());
    CHECK(validate_device(overlapped_device(1)).empty());
}

TEST_CASE("device validation pinpoints broken invariants") {
    SUBCASE("opposite sectors must carry the same color in opposite shades") {
        DeviceConfig config = default_device();
        config.sectors[7].shade = Shade::Dark;
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
    SUBCASE("every color exactly twice") {
        DeviceConfig config = default_device();
        config.sectors[7].color = 3;
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
    SUBCASE("detector slots must be adjacent") {
        DeviceConfig config = default_device();
        config.geometry[0].read_slots = {0, 2};
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
    SUBCASE("detector must read the context's colors") {
        DeviceConfig config = default_device();
        config.geometry[0].read_slots = {2, 3};
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
    SUBCASE("too few colors") {
        DeviceConfig config = default_device();
        config.colors = 2;
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
    SUBCASE("overlapped side flag") {
        DeviceConfig config = overlapped_device(0);
        config.overlapped_side = 2;
        CHECK(has_issue(validate_device(config), "InvalidDevice"));
    }
}

TEST_CASE("resting configurations place sectors antipodally") {
    DeviceState rest0{0};
    DeviceState rest1{1};
    CHECK(rest0.sector_at_slot(3, 10) == 3);
    CHECK(rest1.sector_at_slot(3, 10) == 8);
    CHECK(rest1.sector_at_slot(8, 10) == 3);
}

TEST_CASE("joint presses read the geometry deterministically per toss bit") {
    const DeviceConfig config = default_device();

    // Toss bit 0 leaves rest configuration 0: context C2 reads slots (2,3),
    // showing dark color 2 and light color 3, i.e. (⊤,⊥).
    auto rng0 = fixed_word(0);
    const TrialRecord r0 = press_joint(config, 2, rng0);
    CHECK(r0.mode == "joint");
    CHECK(r0.pressed == "A2,A3");
    CHECK(r0.measurements == std::vector<std::string>{"A2", "A3"});
    CHECK(r0.outcomes == std::vector<std::string>{"⊤", "⊥"});

    // Toss bit 1 swaps to the antipodal rest: same slots now show the light
    // copy of 2 and the dark copy of 3.
    auto rng1 = fixed_word(1);
    const TrialRecord r1 = press_joint(config, 2, rng1);
    CHECK(r1.outcomes == std::vector<std::string>{"⊥", "⊤"});

    auto rng2 = fixed_word(0);
    CHECK_THROWS_AS(press_joint(config, 9, rng2), Error);
}

TEST_CASE("joint outcomes are anti-correlated on every contextual trial") {
    const DeviceConfig config = default_device();
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto rng = press_randomness(11, i);
        const int c = static_cast<int>(i % 5);
        const TrialRecord record = press_joint(config, c, rng);
        REQUIRE(record.outcomes.size() == 2);
        CHECK(record.outcomes[0] != record.outcomes[1]);
    }
}

TEST_CASE("the wrap context pairs the first and last colors") {
    const DeviceConfig config = default_device();
    // C4 reads slots (4,5): rest 0 shows dark 4 and light 0, so in canonical
    // member order (A0, A4) the record reports A0 first.
    auto rng = fixed_word(0);
    const TrialRecord record = press_joint(config, 4, rng);
    CHECK(record.measurements == std::vector<std::string>{"A0", "A4"});
    CHECK(record.outcomes == std::vector<std::string>{"⊥", "⊤"});
}

TEST_CASE("overlapped presses correlate the wrap pair instead") {
    const DeviceConfig config = overlapped_device(0);
    int top_top = 0;
    const int trials = 400;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto rng = press_randomness(23, i);
        const TrialRecord record = press_joint(config, 4, rng);
        REQUIRE(record.outcomes.size() == 2);
        CHECK(record.outcomes[0] == record.outcomes[1]);
        if (record.outcomes[0] == "⊤") ++top_top;
    }
    // Fair coin between (⊤,⊤) and (⊥,⊥): 4σ band around 200.
    CHECK(std::abs(top_top - trials / 2) < 4 * std::sqrt(trials / 4.0));

    // Other contexts stay anti-correlated in overlapped mode too.
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = press_randomness(29, i);
        const TrialRecord record = press_joint(config, static_cast<int>(i % 4), rng);
        CHECK(record.outcomes[0] != record.outcomes[1]);
    }
}

TEST_CASE("single presses read one color through a context") {
    const DeviceConfig config = default_device();

    // Word 0: selection bit 0 picks the lower-indexed containing context C0,
    // toss bit 0 rests at configuration 0, slot 0 shows dark red: ⊤.
    auto rng = fixed_word(0);
    const TrialRecord record = press_single(config, 0, rng);
    CHECK(record.mode == "single");
    CHECK(record.pressed == "A0");
    CHECK(record.measurements == std::vector<std::string>{"A0"});
    CHECK(record.outcomes == std::vector<std::string>{"⊤"});

    SUBCASE("forced context must contain the measurement") {
        auto rng_forced = fixed_word(0);
        CHECK_NOTHROW(press_single(config, 0, rng_forced, 4));
        auto rng_bad = fixed_word(0);
        CHECK_THROWS_AS(press_single(config, 0, rng_bad, 2), Error);
    }
    SUBCASE("unknown measurement") {
        auto rng_bad = fixed_word(0);
        CHECK_THROWS_AS(press_single(config, 7, rng_bad), Error);
    }
    SUBCASE("agent-chosen policy needs a forced context") {
        DeviceConfig agent = default_device();
        agent.policy = SelectionPolicy::AgentChosen;
        auto rng_a = fixed_word(0);
        CHECK_THROWS_AS(press_single(agent, 0, rng_a), Error);
        auto rng_b = fixed_word(0);
        CHECK_NOTHROW(press_single(agent, 0, rng_b, 0));
    }
}

TEST_CASE("single-press marginals are fair regardless of the context") {
    const DeviceConfig config = default_device();
    const int trials = 10000;
    for (int m = 0; m < 5; ++m) {
        int top = 0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            auto rng = press_randomness(31 + m, i);
            if (press_single(config, m, rng).outcomes[0] == "⊤") ++top;
        }
        // 4σ band: 0.5 ± 0.02.
        CHECK(std::abs(top / double(trials) - 0.5) < 0.02);
    }

    // Forcing either containing context leaves the marginal fair.
    for (int forced : {0, 4}) {
        int top = 0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            auto rng = press_randomness(47 + forced, i);
            if (press_single(config, 0, rng, forced).outcomes[0] == "⊤") ++top;
        }
        CHECK(std::abs(top / double(trials) - 0.5) < 0.02);
    }
}

TEST_CASE("sequential presses need cyclically adjacent measurements") {
    const DeviceConfig config = default_device();
    auto rng = fixed_word(0);
    CHECK_THROWS_AS(press_sequential(config, 0, 2, rng), Error);
    try {
        auto rng2 = fixed_word(0);
        press_sequential(config, 0, 2, rng2);
    } catch (const Error& e) {
        CHECK(e.code() == "NonAdjacentPress");
    }

    auto rng3 = fixed_word(0);
    const TrialRecord record = press_sequential(config, 3, 2, rng3);
    CHECK(record.mode == "sequential");
    CHECK(record.measurements == std::vector<std::string>{"A3", "A2"});  // press order
    REQUIRE(record.outcomes.size() == 2);

    auto rng4 = fixed_word(0);
    CHECK_NOTHROW(press_sequential(config, 4, 0, rng4));  // wrap-around pair
}

TEST_CASE("sequential outcomes are independent between the two presses") {
    const DeviceConfig config = default_device();
    int same = 0;
    const int trials = 10000;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto rng = press_randomness(53, i);
        const TrialRecord record = press_sequential(config, 0, 1, rng);
        if (record.outcomes[0] == record.outcomes[1]) ++same;
    }
    // Independent fair bits agree half the time; joint presses never do.
    CHECK(std::abs(same / double(trials) - 0.5) < 0.02);
}

TEST_CASE("run_experiment tallies joint counts that converge to the coin toss") {
    const DeviceConfig config = default_device();
    std::vector<PressSpec> schedule;
    for (int c = 0; c < 5; ++c) {
        PressSpec spec;
        spec.kind = PressKind::Joint;
        spec.context_index = c;
        schedule.push_back(spec);
    }
    const std::uint64_t trials = 20000;
    const EmpiricalBehavior counts = run_experiment(config, schedule, 97, trials);

    const auto freq = counts.joint_frequencies();
    for (int c = 0; c < 5; ++c) {
        CHECK(counts.joint_total(c) == trials);
        // Forbidden same-outcome cells are structurally empty, not just rare.
        CHECK(counts.joint_counts()[c][0] == 0);
        CHECK(counts.joint_counts()[c][3] == 0);
        CHECK(std::abs(freq[c][1] - 0.5) < 0.015);
        CHECK(std::abs(freq[c][2] - 0.5) < 0.015);
    }

    CHECK_THROWS_AS(run_experiment(config, {}, 1, 10), Error);
    CHECK_THROWS_AS(run_experiment(config, schedule, 1, 0), Error);
}

TEST_CASE("experiment logs carry one record per trial with counter paths") {
    const DeviceConfig config = default_device();
    PressSpec joint;
    joint.kind = PressKind::Joint;
    joint.context_index = 1;
    PressSpec single;
    single.kind = PressKind::Single;
    single.measurement = 3;
    const std::vector<PressSpec> schedule{joint, single};

    std::vector<TrialRecord> log;
    run_experiment(config, schedule, 5, 4, {}, &log);
    REQUIRE(log.size() == 8);
    CHECK(log[0].rng_seed_path == "s5/p0");
    CHECK(log[7].rng_seed_path == "s5/p7");
    CHECK(log[0].mode == "joint");
    CHECK(log[4].mode == "single");
    CHECK(log[4].pressed == "A3");

    // Same seed, same schedule: bit-identical records.
    std::vector<TrialRecord> again;
    run_experiment(config, schedule, 5, 4, {}, &again);
    REQUIRE(again.size() == log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
        CHECK(log[i].outcomes == again[i].outcomes);
        CHECK(log[i].rng_seed_path == again[i].rng_seed_path);
    }

    // A different seed changes at least one outcome somewhere.
    std::vector<TrialRecord> shifted;
    run_experiment(config, schedule, 6, 4, {}, &shifted);
    bool any_difference = false;
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (log[i].outcomes != shifted[i].outcomes) any_difference = true;
    }
    CHECK(any_difference);
}

TEST_CASE("sequential tallies use canonical member order") {
    const DeviceConfig config = default_device();
    PressSpec spec;
    spec.kind = PressKind::Sequential;
    spec.measurement = 1;  // press A1 then A0: tallies must land in C0's table
    spec.second = 0;
    const EmpiricalBehavior counts = run_experiment(config, {spec}, 13, 2000);
    CHECK(counts.sequential_total(0) == 2000);
    std::uint64_t total = 0;
    for (const auto v : counts.sequential_counts()[0]) total += v;
    CHECK(total == 2000);
    // All four cells populated: sequential presses break the anti-correlation.
    for (const auto v : counts.sequential_counts()[0]) CHECK(v > 0);
}

TEST_CASE("the device's analytic behavior matches the named behaviors exactly") {
    CHECK(induced_behavior(default_device()) == generalized_coin_toss());
    CHECK(induced_behavior(overlapped_device(0)) == rearranged_device_behavior());
    CHECK(induced_behavior(overlapped_device(1)) == rearranged_device_behavior());
}

TEST_CASE("estimate_and_certify on contextual-mode data") {
    const DeviceConfig config = default_device();
    std::vector<PressSpec> schedule;
    for (int c = 0; c < 5; ++c) {
        PressSpec spec;
        spec.kind = PressKind::Joint;
        spec.context_index = c;
        schedule.push_back(spec);
    }
    const EmpiricalBehavior counts = run_experiment(config, schedule, 101, 10000);
    const AnalysisReport report = estimate_and_certify(counts);

    // Anti-correlation is structural, so the correlation sum is exactly -5
    // whatever the sampled split between the two permitted cells.
    CHECK(report.kcbs_value == Rational(-5));
    CHECK(report.kcbs_bound == Rational(-3));
    CHECK(report.kcbs_estimate == doctest::Approx(-5.0));
    CHECK(report.decision.verdict == Verdict::Contextual);
    CHECK(report.decision.certificate.has_value());
    CHECK_FALSE(report.boundary_proximate);
    CHECK(report.nd_within_tolerance);
    CHECK(report.nd_tolerance > 0);

    SUBCASE("a context with no data cannot be analyzed") {
        std::vector<PressSpec> partial(schedule.begin(), schedule.end() - 1);
        const EmpiricalBehavior sparse = run_experiment(config, partial, 7, 100);
        CHECK_THROWS_AS(estimate_and_certify(sparse), Error);
        CHECK_THROWS_AS(sparse.rationalized(), Error);
    }
}

TEST_CASE("estimate_and_certify flags the overlapped boundary") {
    const DeviceConfig config = overlapped_device(0);
    std::vector<PressSpec> schedule;
    for (int c = 0; c < 5; ++c) {
        PressSpec spec;
        spec.kind = PressKind::Joint;
        spec.context_index = c;
        schedule.push_back(spec);
    }
    const EmpiricalBehavior counts = run_experiment(config, schedule, 103, 10000);
    const AnalysisReport report = estimate_and_certify(counts);

    // One context perfectly correlated, four perfectly anti-correlated: the
    // sum is exactly the classical bound, so the boundary flag must be up.
    CHECK(report.kcbs_value == Rational(-3));
    CHECK(report.boundary_proximate);
    CHECK(report.nd_within_tolerance);
}

TEST_CASE("rationalized counts are exact fractions of the trial totals") {
    const DeviceConfig config = default_device();
    PressSpec spec;
    spec.kind = PressKind::Joint;
    spec.context_index = 0;
    std::vector<PressSpec> schedule(5);
    for (int c = 0; c < 5; ++c) {
        schedule[c].kind = PressKind::Joint;
        schedule[c].context_index = c;
    }
    const EmpiricalBehavior counts = run_experiment(config, schedule, 11, 640);
    const Behavior b = counts.rationalized();
    for (int c = 0; c < 5; ++c) {
        for (std::size_t r = 0; r < 4; ++r) {
            CHECK(b.table(c)[r] ==
                  Rational(Integer(counts.joint_counts()[c][r]), Integer(640)));
        }
    }
}
