#pragma once

#include <cstdint>
#include <random>

namespace strnet {

// 53-bit uniform in [0,1). Mapping the raw engine output directly keeps
// the stream identical across standard library implementations, which
// std::uniform_real_distribution does not guarantee.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [-half_width, +half_width].
inline double uniform_symmetric(std::mt19937_64& rng, double half_width) {
    return half_width * (2.0 * uniform01(rng) - 1.0);
}

}  // namespace strnet
