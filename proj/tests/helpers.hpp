#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netens/core.hpp"
#include "netens/rng.hpp"

namespace testutil {

/// Deterministic test-data stream with a tiny convenience API.
struct Rand {
    std::uint64_t seed;
    std::uint64_t counter = 0;

    explicit Rand(std::uint64_t s) : seed(s) {}
    double uniform() { return netens::rng::uniform(seed, 0xabcd, counter++); }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::int64_t int_range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(
                        netens::rng::below(seed, 0xef01, counter++,
                                           static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double normal() { return netens::rng::normal(seed, 0x2345, counter++); }
};

/// Visits all 2^V fermionic configurations of a spec (V <= 30).
inline void enumerate_all_configurations(
    const netens::GraphSpec& spec,
    const std::function<void(const netens::Configuration&)>& visit) {
    const std::int64_t volume = spec.volume();
    netens::Configuration config(spec);
    for (std::uint64_t mask = 0; mask < (1ull << volume); ++mask) {
        for (std::int64_t k = 0; k < volume; ++k)
            config.set_occupation_at(k, (mask >> k) & 1u);
        visit(config);
    }
}

/// Balanced strictly-positive integer targets: endowments in [1, max_value],
/// allocations a random redistribution of the same total with every entry >= 1.
inline netens::NodeTargets random_balanced_targets(Rand& rand, int n, std::int64_t max_value) {
    netens::NodeTargets targets;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        const std::int64_t w = rand.int_range(1, max_value);
        targets.endowments.push_back(static_cast<double>(w));
        total += w;
    }
    targets.allocations.assign(static_cast<std::size_t>(n), 1.0);
    for (std::int64_t unit = 0; unit < total - n; ++unit)
        targets.allocations[static_cast<std::size_t>(rand.int_range(0, n - 1))] += 1.0;
    return targets;
}

/// Balanced nonnegative integer targets (zeros allowed).
inline netens::NodeTargets random_nonnegative_targets(Rand& rand, int n,
                                                      std::int64_t max_value) {
    netens::NodeTargets targets;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        const std::int64_t w = rand.int_range(0, max_value);
        targets.endowments.push_back(static_cast<double>(w));
        total += w;
    }
    targets.allocations.assign(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t unit = 0; unit < total; ++unit)
        targets.allocations[static_cast<std::size_t>(rand.int_range(0, n - 1))] += 1.0;
    return targets;
}

}  // namespace testutil
