#pragma once

#include <cstdint>
#include <string>

namespace hyperctx {

// Counter-mode randomness: every press in an experiment owns one 64-bit word
// derived from (seed, press index) by the SplitMix64 finalizer. Words can be
// generated in any order, so parallel trial generation reproduces the serial
// stream bit for bit.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// One press worth of randomness. Bits are drawn lowest-first; a press never
/// needs more than a handful.
struct PressRandomness {
    std::uint64_t word = 0;
    int next_bit = 0;
    std::string path;  // reproducibility token, "s<seed>/p<index>"

    bool draw_bit() {
        const bool bit = (word >> next_bit) & 1u;
        ++next_bit;
        return bit;
    }
};

inline PressRandomness press_randomness(std::uint64_t seed, std::uint64_t index) {
    PressRandomness r;
    r.word = counter_word(seed, index);
    r.path = "s" + std::to_string(seed) + "/p" + std::to_string(index);
    return r;
}

}  // namespace hyperctx
