#pragma once

// Deterministic random streams. The engine is std::mt19937_64 (its output
// sequence is fully specified by the standard, so runs reproduce across
// compilers). Substreams for parallel chunks are derived from
// (master seed, stream index) with a SplitMix64 finalizer.

#include <cstdint>
#include <random>

#include "drakelim/math.hpp"

namespace drakelim {

using RandomEngine = std::mt19937_64;

// SplitMix64 finalizer over the combined key. Nearby indices map to
// decorrelated seeds, which is what the chunked runner relies on.
constexpr std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline RandomEngine make_substream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return RandomEngine{mix_seed(master_seed, stream_index)};
}

// Uniform draw strictly inside (0, 1): 52 random bits on a midpoint grid,
// so neither endpoint is attainable and inverse-CDF transforms stay finite.
template <typename URBG>
double uniform_open(URBG& g) {
    static_assert(URBG::max() == 0xFFFFFFFFFFFFFFFFULL && URBG::min() == 0,
                  "uniform_open expects a full-range 64-bit engine");
    const auto bits = static_cast<std::uint64_t>(g()) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1p-52;
}

// Standard normal deviate via the inverse CDF. Exact tails; no
// central-limit shortcut.
template <typename URBG>
double normal_standard(URBG& g) {
    return inverse_normal_cdf(uniform_open(g));
}

}  // namespace drakelim
