#include "netens/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "netens/fit.hpp"
#include "netens/numeric.hpp"

namespace netens {

namespace {

void check_bosonic(const EnergyLevels& levels, const EnsembleParams& params) {
    if (levels.spec().statistics == Statistics::bosonic && params.mu >= levels.min_value())
        throw ModelError("bosonic ensemble diverges: mu >= min epsilon");
}

}  // namespace

double expected_occupation(double epsilon, const EnsembleParams& params,
                           Statistics statistics) {
    params.validate();
    const double x = (params.mu - epsilon) / params.temperature;
    if (statistics == Statistics::fermionic) return logistic(x);
    if (x >= 0.0) throw ModelError("bosonic occupation diverges: mu >= epsilon");
    return 1.0 / std::expm1(-x);
}

double occupation_variance(double epsilon, const EnsembleParams& params,
                           Statistics statistics) {
    params.validate();
    const double x = (params.mu - epsilon) / params.temperature;
    if (statistics == Statistics::fermionic) return logistic(x) * logistic(-x);
    if (x >= 0.0) throw ModelError("bosonic occupation diverges: mu >= epsilon");
    const double n = 1.0 / std::expm1(-x);
    return n * (1.0 + n);
}

double log_grand_partition(const EnergyLevels& levels, const EnsembleParams& params) {
    params.validate();
    check_bosonic(levels, params);
    const Statistics stats = levels.spec().statistics;
    KahanSum sum;
    for (double eps : levels.values()) {
        const double x = (params.mu - eps) / params.temperature;
        if (stats == Statistics::fermionic) {
            sum.add(log1p_exp(x));
        } else {
            sum.add(-log1m_exp(x));
        }
    }
    return sum.value();
}

double expected_links(const EnergyLevels& levels, const EnsembleParams& params) {
    params.validate();
    check_bosonic(levels, params);
    const Statistics stats = levels.spec().statistics;
    KahanSum sum;
    for (double eps : levels.values()) sum.add(expected_occupation(eps, params, stats));
    const double links = sum.value();

    // Cross-check against z d(log Q)/dz; log z = mu/T, so a step h in log z
    // is a step T*h in mu. Bosonic occupations scale like 1/gap and the
    // third derivative of log Q like 1/gap^3, so the step must shrink with
    // the gap to keep the truncation error inside the tolerance; when the
    // gap is too narrow for a meaningful two-sided step the check is skipped.
    double h = 1e-5;
    if (stats == Statistics::bosonic) {
        const double gap = (levels.min_value() - params.mu) / params.temperature;
        if (gap < 1e-7) return links;
        h = std::min(h, 1e-4 * gap);
    }
    const double th = params.temperature * h;
    const double mu_hi = params.mu + th;
    const double mu_lo = params.mu - th;
    if (!(mu_hi > mu_lo)) return links;  // step below the resolution of mu
    const double lq_hi = log_grand_partition(levels, {params.temperature, mu_hi});
    const double lq_lo = log_grand_partition(levels, {params.temperature, mu_lo});
    // divide by the realized step: mu +- th rounds, and at small h the
    // difference between intended and effective step would dominate
    const double fd = (lq_hi - lq_lo) * params.temperature / (mu_hi - mu_lo);
    const double tol = 1e-6 * std::max(std::abs(links), std::abs(fd)) + 1e-12;
    if (!(std::abs(links - fd) <= tol))
        throw std::logic_error("expected_links: occupation sum disagrees with dlogQ/dlogz (" +
                               std::to_string(links) + " vs " + std::to_string(fd) + ")");
    return links;
}

double expected_energy(const EnergyLevels& levels, const EnsembleParams& params) {
    params.validate();
    check_bosonic(levels, params);
    const Statistics stats = levels.spec().statistics;
    KahanSum sum;
    for (double eps : levels.values()) sum.add(eps * expected_occupation(eps, params, stats));
    return sum.value();
}

double link_covariance(const EnergyLevels& levels, const EnsembleParams& params,
                       std::pair<int, int> ab, std::pair<int, int> cd) {
    const GraphSpec& spec = levels.spec();
    const std::int64_t first = spec.pair_index(ab.first, ab.second);
    const std::int64_t second = spec.pair_index(cd.first, cd.second);
    if (first != second) return 0.0;
    return occupation_variance(levels.at_index(first), params, spec.statistics);
}

double strength_covariance(const EnergyLevels& levels, const EnsembleParams& params,
                           int i, int j) {
    if (!levels.additive())
        throw std::invalid_argument("strength_covariance: additive levels required");
    const GraphSpec& spec = levels.spec();
    if (i < 0 || j < 0 || i >= spec.n_nodes || j >= spec.n_nodes)
        throw std::invalid_argument("strength_covariance: node index out of range");
    KahanSum sum;
    for_each_pair(spec, [&](int a, int b, std::int64_t k) {
        const bool touches_i = (a == i || b == i);
        const bool touches_j = (a == j || b == j);
        if (touches_i && touches_j)
            sum.add(occupation_variance(levels.at_index(k), params, spec.statistics));
    });
    return sum.value();
}

double graph_log_probability(const Configuration& config, const EnergyLevels& levels,
                             const EnsembleParams& params) {
    if (config.spec() != levels.spec())
        throw std::invalid_argument("graph_log_probability: spec mismatch");
    const double links = static_cast<double>(config.link_count());
    const double h = energy(config, levels);
    return (params.mu * links - h) / params.temperature - log_grand_partition(levels, params);
}

const char* to_string(CvConvention c) {
    return c == CvConvention::fixed_links ? "fixed_L" : "fixed_mu";
}

ThermoReport thermo_report(const EnergyLevels& levels, const EnsembleParams& params,
                           CvConvention convention, std::optional<double> link_target) {
    params.validate();
    const GraphSpec& spec = levels.spec();
    const double t = params.temperature;

    double mu_center = params.mu;
    double links;
    if (convention == CvConvention::fixed_links) {
        const double target =
            link_target ? *link_target : expected_links(levels, params);
        if (spec.statistics == Statistics::fermionic &&
            !(target > 0.0 && target < static_cast<double>(spec.volume())))
            throw ModelError("thermo_report: fermionic link target must lie in (0, V)");
        if (spec.statistics == Statistics::bosonic && !(target > 0.0))
            throw ModelError("thermo_report: bosonic link target must be positive");
        mu_center = solve_mu_for_links(levels, t, target);
        links = target;
    } else {
        if (link_target)
            throw std::invalid_argument("thermo_report: link target needs fixed_links");
        links = expected_links(levels, params);
    }

    const EnsembleParams center{t, mu_center};
    const double log_q = log_grand_partition(levels, center);
    const double e = expected_energy(levels, center);
    const double pv = t * log_q;
    const double s = (e + pv - mu_center * links) / t;
    const double f = e - t * s;

    const double dt = std::max(1e-3 * t, 1e-9);
    double e_hi, e_lo;
    if (convention == CvConvention::fixed_links) {
        const double mu_hi = solve_mu_for_links(levels, t + dt, links);
        const double mu_lo = solve_mu_for_links(levels, t - dt, links);
        e_hi = expected_energy(levels, {t + dt, mu_hi});
        e_lo = expected_energy(levels, {t - dt, mu_lo});
    } else {
        e_hi = expected_energy(levels, {t + dt, mu_center});
        e_lo = expected_energy(levels, {t - dt, mu_center});
    }
    const double cv = (e_hi - e_lo) / (2.0 * dt);

    ThermoReport report;
    report.energy = e;
    report.entropy = s;
    report.helmholtz = f;
    report.pressure_volume = pv;
    report.expected_links = links;
    report.specific_heat = cv;
    report.params = center;
    report.convention = convention;
    report.volume = spec.volume();
    return report;
}

}  // namespace netens
