#pragma once

// Deterministic random streams.
//
// Every consumer (bootstrap split k, bootstrap resample r, ...) gets its own
// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)). Integers
// in [0, n) are drawn by rejection sampling on the raw 64-bit output, so the
// sequence is identical across standard libraries; std::uniform_int_distribution
// is deliberately not used because its algorithm is implementation-defined.

#include <cstdint>
#include <random>

namespace asbench {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

[[nodiscard]] inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64{ splitmix64(seed ^ splitmix64(stream)) };
}

/// Uniform integer in [0, n); n must be > 0.
[[nodiscard]] inline std::uint64_t uniform_index(std::mt19937_64 &gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t draw = gen();
    while (draw >= limit) {
        draw = gen();
    }
    return draw % n;
}

}  // namespace asbench
