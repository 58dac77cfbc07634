#pragma once

#include <cmath>
#include <cstdint>

namespace netens::rng {

// Counter-based generator: every draw is a pure hash of
// (seed, stream, counter), so any subset of streams can be produced in any
// order, on any number of workers, with identical results.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t bits(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (stream * kGolden + 1));
    h = mix64(h ^ (counter * kGolden + 2));
    return h;
}

/// Uniform in [0, 1), 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Uniform in (0, 1]; safe as a log argument.
inline double uniform_open(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>((bits(seed, stream, counter) >> 11) + 1) * 0x1.0p-53;
}

/// One standard normal per (seed, stream, counter) via Box-Muller; the two
/// underlying uniforms come from sub-streams 2*stream+1 and 2*stream+2.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double u1 = uniform_open(seed, 2 * stream + 1, counter);
    const double u2 = uniform(seed, 2 * stream + 2, counter);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t below(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                           std::uint64_t n) {
    const std::uint64_t threshold = (0ull - n) % n;  // 2^64 mod n
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t r = bits(seed, stream, counter * 0x10000ull + attempt);
        if (r >= threshold) return r % n;
    }
}

}  // namespace netens::rng
