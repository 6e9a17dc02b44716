#pragma once

// Shared test helpers: a tiny deterministic generator and random
// noncontextual behaviors built as explicit vertex mixtures, so every
// generated case carries its own ground truth.

#include "hyperctx/polytope.hpp"
#include "hyperctx/scenario.hpp"

#include <cstdint>
#include <vector>

namespace testsupport {

// Deterministic 64-bit LCG (Knuth constants). Not a quality generator, but
// tests need reproducibility, not statistics.
struct Lcg {
    std::uint64_t state = 0x853c49e6748fea9bULL;

    std::uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 11;
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// A random mixture of at most max_vertices point masses with small integer
// weights. Noncontextual by construction: the returned distribution is its
// own witness.
inline hyperctx::GlobalDistribution random_mixture(const hyperctx::Scenario& scenario, Lcg& rng,
                                                   int max_vertices = 4) {
    const std::size_t total = scenario.global_assignment_count(std::size_t{1} << 20);
    std::vector<hyperctx::Integer> weights(total, 0);
    hyperctx::Integer denom = 0;
    const int picks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
    for (int i = 0; i < picks; ++i) {
        const auto w = hyperctx::Integer(1 + rng.below(9));
        weights[rng.below(total)] += w;
        denom += w;
    }
    std::vector<hyperctx::Rational> table(total);
    for (std::size_t t = 0; t < total; ++t) table[t] = hyperctx::Rational(weights[t], denom);
    return hyperctx::GlobalDistribution(scenario, std::move(table));
}

}  // namespace testsupport
