#pragma once

#include <cstdint>

namespace chiralnet {

/// Counter-based uniform variates: every draw is a pure function of
/// (seed, stream, counter), so Monte-Carlo samples can be evaluated in any
/// order, on any number of threads, and still reproduce bit-exactly.
/// Mixing is the splitmix64 finalizer applied to the chained key.

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t counter) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (0x517cc1b727220a95ULL + stream));
    h = splitmix64(h ^ (0x2545f4914f6cdd1dULL + counter));
    return h;
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
    return static_cast<double>(counter_hash(seed, stream, counter) >> 11) *
           0x1.0p-53;
}

/// Uniform double in [-half_width, half_width).
constexpr double uniform_symmetric(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t counter, double half_width) {
    return (2.0 * uniform01(seed, stream, counter) - 1.0) * half_width;
}

} // namespace chiralnet
