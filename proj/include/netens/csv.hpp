#pragma once

#include <filesystem>
#include <vector>

#include "netens/analytic.hpp"
#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"
#include "netens/microcanonical.hpp"
#include "netens/relaxation.hpp"
#include "netens/sampler.hpp"

namespace netens {

// All writers emit a header row; floating-point fields carry 17 significant
// digits so round-trips are value-exact.

/// `i,j,occupation` — one row per admissible pair.
void write_configuration_csv(const Configuration& config, const std::filesystem::path& path);
Configuration read_configuration_csv(const GraphSpec& spec, const std::filesystem::path& path);

/// `i,j,epsilon`.
void write_levels_csv(const EnergyLevels& levels, const std::filesystem::path& path);
EnergyLevels read_levels_csv(const GraphSpec& spec, const std::filesystem::path& path);

/// `node,omega,x_star`.
void write_targets_csv(const NodeTargets& targets, const std::filesystem::path& path);
NodeTargets read_targets_csv(const std::filesystem::path& path);

/// `bin_low,bin_high,count,entropy` (entropy is nan on empty bins).
void write_histogram_csv(const EnergyHistogram& histogram, const std::filesystem::path& path);

/// `T,mu,E,S,F,PV,L_bar,C_V,convention`.
void write_thermo_csv(const std::vector<ThermoReport>& reports, const std::filesystem::path& path);

/// `replicate,L,H,log_prob`.
void write_batch_csv(const SampleBatch& batch, const std::filesystem::path& path);

/// `step,i,j,quantity,z_total`.
void write_trace_csv(const RelaxState& state, const std::filesystem::path& path);

/// `L,count` for the sampled link-count histogram.
void write_link_histogram_csv(const std::vector<std::uint64_t>& counts,
                              const std::filesystem::path& path);

/// `bin_low,bin_high,n_graphs_analytic,n_graphs_empirical`; the first row
/// holds the underflow bucket (bin_low = 0).
void write_spectrum_csv(const ProbabilitySpectrumSlice& slice, const SpectrumBinning& binning,
                        const std::filesystem::path& path);

}  // namespace netens
