#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rydent {

// Hand-rolled draws on top of mt19937_64 so that sampled artifacts are
// reproducible from the seed alone, independent of standard-library
// distribution implementations.

inline double uniform53(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53; // [0, 1)
}

inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    // rejection sampling on the smallest covering bit mask
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t r = eng() & mask;
        if (r < bound) return r;
    }
}

inline double gaussian(std::mt19937_64& eng) {
    // Box-Muller; one value per call keeps the stream layout obvious
    double u1 = uniform53(eng);
    while (u1 <= 0.0) u1 = uniform53(eng);
    const double u2 = uniform53(eng);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace rydent
