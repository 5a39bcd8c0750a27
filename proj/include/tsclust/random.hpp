#pragma once

// Seedable RNG helpers. std::uniform_int_distribution is implementation
// defined, so bounded draws are mapped explicitly to keep runs reproducible
// across standard libraries.

#include <cstdint>
#include <random>

namespace tsclust {

using Rng = std::mt19937_64;

/// Uniform integer in [0, hi]. Always consumes exactly one generator value,
/// so call sites keep the draw stream aligned even when hi == 0.
template <class Gen>
std::uint64_t draw_bounded(Gen& gen, std::uint64_t hi) {
    const std::uint64_t x = gen();
    return hi == 0 ? 0 : x % (hi + 1);
}

/// Uniform double in [0, 1) from the top 53 bits.
template <class Gen>
double draw_unit(Gen& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace tsclust
