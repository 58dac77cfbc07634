#pragma once

#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"

namespace netens {

struct FitOptions {
    double tolerance = 1e-8;   // residual sup-norm
    int max_iterations = 10000;
};

struct FitResult {
    EnergyLevels levels;     // additive generator, gauge-fixed: out_factors[0] = 0
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    /// max over nodes of sd(strength)/mean(strength) at the fitted point,
    /// from the closed-form link variances. Left to the caller to judge.
    double max_strength_cv = 0.0;
};

/// Solves for additive levels eps_ij = lambda_i + theta_j (chemical
/// potential absorbed, mu = 0) such that the expected out-strengths match
/// the endowments and the expected in-strengths match the allocations:
///   sum_j <sigma_ij> = omega_i,   sum_i <sigma_ij> = x*_j.
/// Directed specs only; bosonic is the market case, fermionic is accepted as
/// generic degree-style plumbing. All targets must be strictly positive and
/// balanced. Coordinate-wise exact updates with a damped Newton fallback on
/// the stacked residual; deterministic given the data.
FitResult fit_strengths(const NodeTargets& targets, const GraphSpec& spec,
                        double temperature, const FitOptions& options = {});

/// mu such that <L>(mu) = target_links, to 1e-10 relative. <L> is strictly
/// increasing in mu, so bracketed bisection plus a Newton polish suffices.
/// Fermionic targets must lie in (0, V); bosonic targets must be positive.
/// When one ulp of mu moves <L> by more than the tolerance (extreme
/// d<L>/dmu, e.g. bosonic occupations ~1e4 at T ~ 1e-3) the closest
/// representable root is returned.
double solve_mu_for_links(const EnergyLevels& levels, double temperature,
                          double target_links);

}  // namespace netens
