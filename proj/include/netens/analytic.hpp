#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"

namespace netens {

/// Mean occupation of a single level: Fermi-Dirac e^x/(1+e^x) or
/// Bose-Einstein 1/(e^{-x}-1), with x = (mu - eps)/T. Bosonic requires
/// mu < eps.
double expected_occupation(double epsilon, const EnsembleParams& params, Statistics statistics);

/// Single-level fluctuation: p(1-p) fermionic, n(1+n) bosonic.
double occupation_variance(double epsilon, const EnsembleParams& params, Statistics statistics);

/// log Q = sum over admissible pairs of log(1 + e^{(mu-eps)/T}) (fermionic)
/// or -log(1 - e^{(mu-eps)/T}) (bosonic). Throws ModelError when a bosonic
/// factor diverges (mu >= min eps).
double log_grand_partition(const EnergyLevels& levels, const EnsembleParams& params);

/// <L> = sum of expected occupations. Internally cross-checked against the
/// finite difference of log Q in log z to 1e-6 relative; a disagreement
/// raises std::logic_error.
double expected_links(const EnergyLevels& levels, const EnsembleParams& params);

/// <H> = sum of eps_ij * <sigma_ij>.
double expected_energy(const EnergyLevels& levels, const EnsembleParams& params);

/// Cov(sigma_ab, sigma_cd): the single-link variance when both name the same
/// admissible pair, exactly 0 otherwise (links are independent).
double link_covariance(const EnergyLevels& levels, const EnsembleParams& params,
                       std::pair<int, int> ab, std::pair<int, int> cd);

/// Covariance of node strengths s_i = sum of sigma over admissible pairs
/// containing i, for additive levels: sum of single-link variances over the
/// pairs shared by s_i and s_j (i == j gives Var(s_i)).
double strength_covariance(const EnergyLevels& levels, const EnsembleParams& params,
                           int i, int j);

/// log P(A) = (mu L_A - H_A)/T - log Q.
double graph_log_probability(const Configuration& config, const EnergyLevels& levels,
                             const EnsembleParams& params);

enum class CvConvention { fixed_links, fixed_mu };

const char* to_string(CvConvention c);

/// Thermodynamic observables of a parameterized ensemble. F = E - T S and
/// PV = T log Q hold to 1e-9 relative by construction.
struct ThermoReport {
    double energy = 0.0;
    double entropy = 0.0;
    double helmholtz = 0.0;
    double pressure_volume = 0.0;
    double expected_links = 0.0;
    double specific_heat = 0.0;
    EnsembleParams params;
    CvConvention convention = CvConvention::fixed_links;
    std::int64_t volume = 0;

    /// PV / V; the volume is the discrete pair count, so this is a derived
    /// convenience, not an independently defined intensive quantity.
    double pressure() const { return pressure_volume / static_cast<double>(volume); }
};

/// Builds the report at the given temperature. Under fixed_links the
/// chemical potential is (re-)solved so that <L> equals link_target (default:
/// <L> at the given params), and the specific heat C = dE/dT is differenced
/// with mu re-solved at T +- dT to hold <L>; under fixed_mu the potential is
/// held constant instead. dT = max(1e-3 T, 1e-9).
ThermoReport thermo_report(const EnergyLevels& levels, const EnsembleParams& params,
                           CvConvention convention = CvConvention::fixed_links,
                           std::optional<double> link_target = std::nullopt);

}  // namespace netens
