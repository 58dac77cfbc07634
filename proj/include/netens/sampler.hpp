#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netens/analytic.hpp"
#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"
#include "netens/microcanonical.hpp"

namespace netens {

/// Per-link cap on bosonic draws; hitting it signals mu too close to min eps.
inline constexpr std::uint64_t kOccupationCap = 1'000'000;

/// One grand-canonical draw. Every link is sampled independently (the
/// measure factorizes over pairs): fermionic links are Bernoulli with the
/// Fermi-Dirac mean, bosonic links are geometric with ratio e^{(mu-eps)/T}.
/// Randomness is a pure function of (seed, replicate, pair index), so any
/// subset of replicates reproduces identically regardless of scheduling.
Configuration sample_configuration(const EnergyLevels& levels, const EnsembleParams& params,
                                   std::uint64_t seed, std::uint64_t replicate);

struct SampleRecord {
    std::uint64_t replicate = 0;
    std::uint64_t links = 0;
    double energy = 0.0;
    double log_probability = 0.0;
};

struct SampleBatch {
    GraphSpec spec;
    EnergyLevels levels;
    EnsembleParams params;
    std::uint64_t seed = 0;
    std::uint64_t n_samples = 0;
    std::vector<SampleRecord> records;
};

/// Resolved worker count: `requested` if nonzero, else hardware concurrency,
/// both clamped by the NETENSEMBLE_THREADS environment variable.
unsigned worker_count(unsigned requested = 0);

/// n_samples independent replicates; identical output for any worker count.
/// Every 100th record is spot-checked against graph_log_probability.
SampleBatch sample_batch(const EnergyLevels& levels, const EnsembleParams& params,
                         std::uint64_t seed, std::uint64_t n_samples,
                         unsigned n_threads = 0);

struct ZeroTemperatureLimit {
    Configuration configuration;
    double probability = 1.0;
    std::string description;
};

/// T->0 limit for constant levels: the complete graph survives when
/// mu > eps (fermionic), the empty graph when mu < eps; mu = eps is
/// degenerate and rejected. Bosonic ensembles only admit the mu < eps case.
ZeroTemperatureLimit limit_zero_temperature(const EnergyLevels& levels, double mu);

/// T->infinity limit (fermionic): every graph has probability 2^{-V}.
double uniform_limit_probability(const GraphSpec& spec);

/// Default T multiplier used when a finite surrogate for T->infinity is
/// needed: T_big = multiplier * max|mu - eps|.
inline constexpr double kBigTemperatureMultiplier = 1e6;

struct EnergyDistributionParams {
    int n_nodes = 10;
    double mu = 10.0;
    double temperature = 1e4;
    std::uint64_t n_samples = 100000;
    std::uint64_t sample_seed = 42;
    double level_mean = 1.0;
    double level_sd = 0.5;
    std::uint64_t level_seed = 7;
    std::size_t energy_bins = 60;
};

struct ChiSquareFit {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

struct EnergyDistributionResult {
    GraphSpec spec;
    EnergyHistogram energy_histogram;       // sampled H values
    std::vector<std::uint64_t> link_histogram;  // counts of L = 0..V
    double mean_energy = 0.0;
    double mean_links = 0.0;
    double mean_occupation = 0.0;           // analytic per-link mean
    ChiSquareFit link_gof;                  // L vs Binomial(V, mean_occupation)
};

/// Samples a fermionic ensemble and histograms the energies; the link-count
/// distribution is tested against the binomial with the mean analytic
/// occupation.
EnergyDistributionResult run_energy_distribution(const EnergyLevels& levels, double mu,
                                                 double temperature, std::uint64_t n_samples,
                                                 std::uint64_t seed,
                                                 std::size_t energy_bins = 60);

/// Canned defaults: undirected fermionic spec with Gaussian iid levels.
EnergyDistributionResult run_energy_distribution(const EnergyDistributionParams& params);

struct ProbabilitySpectrumParams {
    int n_nodes = 10;
    double mu = 10.0;
    std::vector<double> temperatures = {20.0, 50.0, 100.0, 700.0, 1000.0};
    std::uint64_t n_samples = 100000;
    std::uint64_t sample_seed = 42;
    double level_mean = 1.0;
    double level_sd = 0.5;
    std::uint64_t level_seed = 7;
};

/// Logarithmic probability bins: bins_per_decade per decade from floor up to
/// 1; probabilities below the floor land in a dedicated underflow bucket.
struct SpectrumBinning {
    double floor = 1e-8;
    int bins_per_decade = 20;
    std::vector<double> edges() const;
};

struct ProbabilitySpectrumSlice {
    double temperature = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t n_distinct = 0;
    /// Distinct sampled graphs binned by analytic probability and by
    /// empirical frequency (count / n_samples).
    std::vector<std::uint64_t> analytic_bins;
    std::vector<std::uint64_t> empirical_bins;
    std::uint64_t analytic_underflow = 0;
    std::uint64_t empirical_underflow = 0;
    std::uint64_t top_count = 0;        // multiplicity of the most frequent graph
    double top_probability = 0.0;       // its analytic probability (ties -> larger)
    double singleton_fraction = 0.0;    // distinct graphs seen exactly once
    double fraction_below_1e3 = 0.0;    // analytic P < 1e-3
    double fraction_near_uniform = 0.0; // within factor 1.5 of 2^{-V}
};

struct ProbabilitySpectrumResult {
    ProbabilitySpectrumParams params;
    SpectrumBinning binning;
    std::vector<ProbabilitySpectrumSlice> slices;
};

/// For each temperature, samples the ensemble and reports the number of
/// distinct graphs per probability bin plus collapse diagnostics.
ProbabilitySpectrumResult run_probability_spectrum(const EnergyLevels& levels, double mu,
                                                   const std::vector<double>& temperatures,
                                                   std::uint64_t n_samples, std::uint64_t seed);

/// Canned defaults: undirected fermionic spec with Gaussian iid levels.
ProbabilitySpectrumResult run_probability_spectrum(const ProbabilitySpectrumParams& params);

}  // namespace netens
