#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"

namespace netens {

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// Energy histogram over an enumerated set; per-bin entropy is ln(count).
struct EnergyHistogram {
    std::vector<double> bin_edges;        // bins() + 1 edges, ascending
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::size_t bins() const { return counts.size(); }
    /// ln(count) of a nonzero bin; NaN for empty bins.
    double entropy_at(std::size_t bin) const;
};

/// C(V, L); throws ResourceError beyond the cap.
std::uint64_t fixed_links_count(const GraphSpec& spec, std::uint64_t links,
                                std::uint64_t cap = kEnumerationCap);

/// Streams every fermionic configuration with exactly `links` links, in
/// ascending lexicographic order of the selected pair-index sets. The
/// visited Configuration is a reused buffer; copy it to keep it.
void enumerate_fixed_links(const GraphSpec& spec, std::uint64_t links,
                           const std::function<void(const Configuration&)>& visit,
                           std::uint64_t cap = kEnumerationCap);

/// Degeneracy histogram Gamma(E) over the fixed-L set. Default bin width is
/// (E_max - E_min)/100; a degenerate spectrum collapses to a single bin.
EnergyHistogram fixed_links_energy_histogram(const GraphSpec& spec, std::uint64_t links,
                                             const EnergyLevels& levels,
                                             std::optional<double> bin_width = std::nullopt,
                                             std::uint64_t cap = kEnumerationCap);

/// log of the fixed-L (canonical-restriction) partition sum
/// Z_L = sum over configurations with L links of exp(-H/T).
double fixed_links_log_partition(const EnergyLevels& levels, double temperature,
                                 std::uint64_t links, std::uint64_t cap = kEnumerationCap);

/// Number of nonnegative integer matrices with row sums = endowments and
/// column sums = allocations (directed, self-loops admitted). Throws
/// ResourceError when the count exceeds the cap.
std::uint64_t market_table_count(const NodeTargets& targets,
                                 std::uint64_t cap = kEnumerationCap);

/// Streams every margin-consistent market configuration exactly once, in
/// lexicographic row-major order; all are equiprobable members of the
/// fixed-margin set. Recursive row filling with remaining-margin pruning.
void enumerate_market_tables(const NodeTargets& targets,
                             const std::function<void(const Configuration&)>& visit,
                             std::uint64_t cap = kEnumerationCap);

/// One table drawn uniformly from the enumerated set; pure function of
/// (targets, seed, draw_index).
Configuration sample_market_table(const NodeTargets& targets, std::uint64_t seed,
                                  std::uint64_t draw_index = 0,
                                  std::uint64_t cap = kEnumerationCap);

}  // namespace netens
