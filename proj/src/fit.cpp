#include "netens/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "netens/analytic.hpp"
#include "netens/numeric.hpp"

namespace netens {

namespace {

double occupation_sum(const EnergyLevels& levels, double t, double mu) {
    const Statistics stats = levels.spec().statistics;
    KahanSum s;
    for (double eps : levels.values()) s.add(expected_occupation(eps, {t, mu}, stats));
    return s.value();
}

double variance_sum(const EnergyLevels& levels, double t, double mu) {
    const Statistics stats = levels.spec().statistics;
    KahanSum s;
    for (double eps : levels.values()) s.add(occupation_variance(eps, {t, mu}, stats));
    return s.value();
}

// Mean occupation as a function of x = eps/T (mu absorbed, so x > 0 bosonic).
double occ_of(double x, Statistics stats) {
    if (stats == Statistics::fermionic) return logistic(-x);
    return 1.0 / std::expm1(x);
}

double var_of(double x, Statistics stats) {
    if (stats == Statistics::fermionic) {
        const double p = logistic(-x);
        return p * (1.0 - p);
    }
    const double n = 1.0 / std::expm1(x);
    return n * (1.0 + n);
}

// Solves sum_j occ(a + offsets[j]) = target for a. The sum is strictly
// decreasing in a; bosonic a is bounded below by -min(offsets).
double solve_multiplier(const std::vector<double>& offsets, double target,
                        Statistics stats, double init) {
    const double lower = stats == Statistics::bosonic
                             ? -*std::min_element(offsets.begin(), offsets.end())
                             : -std::numeric_limits<double>::infinity();
    auto f = [&](double a) {
        KahanSum s;
        for (double off : offsets) s.add(occ_of(a + off, stats));
        return s.value();
    };
    auto fvar = [&](double a) {
        KahanSum s;
        for (double off : offsets) s.add(var_of(a + off, stats));
        return s.value();
    };

    // Bracket [lo, hi] with f(lo) > target > f(hi).
    double lo, hi;
    if (std::isfinite(lower)) {
        double g = std::max(init - lower, 1.0);
        while (f(lower + g) > target) g *= 2.0;
        hi = lower + g;
        g = std::min(g, 1.0);
        while (f(lower + g) < target) {
            g *= 0.5;
            if (g < 1e-300) throw ModelError("fit: target strength not reachable");
        }
        lo = lower + g;
    } else {
        double step = 1.0;
        lo = init;
        while (f(lo) <= target) {
            lo -= step;
            step *= 2.0;
        }
        step = 1.0;
        hi = std::max(init, lo);
        while (f(hi) >= target) {
            hi += step;
            step *= 2.0;
        }
    }

    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        a = 0.5 * (lo + hi);
        const double value = f(a);
        if (value > target)
            lo = a;
        else
            hi = a;
        if (hi - lo <= 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0)) break;
    }
    for (int it = 0; it < 50; ++it) {
        const double value = f(a);
        const double slope = fvar(a);  // df/da = -slope
        if (slope <= 0.0) break;
        double next = a + (value - target) / slope;
        next = std::clamp(next, lo, hi);
        if (next == a) break;
        a = next;
    }
    return a;
}

struct Margins {
    std::vector<double> row;
    std::vector<double> col;
};

Margins margins(const GraphSpec& spec, const std::vector<double>& alpha,
                const std::vector<double>& beta) {
    Margins m;
    m.row.assign(alpha.size(), 0.0);
    m.col.assign(beta.size(), 0.0);
    for_each_pair(spec, [&](int i, int j, std::int64_t) {
        const double n = occ_of(alpha[static_cast<std::size_t>(i)] +
                                    beta[static_cast<std::size_t>(j)],
                                spec.statistics);
        m.row[static_cast<std::size_t>(i)] += n;
        m.col[static_cast<std::size_t>(j)] += n;
    });
    return m;
}

double sup_residual(const Margins& m, const NodeTargets& targets) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.row.size(); ++i)
        r = std::max(r, std::abs(m.row[i] - targets.endowments[i]));
    for (std::size_t j = 0; j < m.col.size(); ++j)
        r = std::max(r, std::abs(m.col[j] - targets.allocations[j]));
    return r;
}

// In-place LU solve with partial pivoting; false on singularity.
bool lu_solve(std::vector<double>& a, std::vector<double>& b, int m) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    auto at = [&](int r, int c) -> double& {
        return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
                 static_cast<std::size_t>(c)];
    };
    for (int k = 0; k < m; ++k) {
        int pivot = k;
        for (int r = k + 1; r < m; ++r)
            if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
        if (std::abs(at(pivot, k)) < 1e-300) return false;
        if (pivot != k) {
            for (int c = 0; c < m; ++c) std::swap(at(k, c), at(pivot, c));
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(pivot)]);
        }
        for (int r = k + 1; r < m; ++r) {
            const double factor = at(r, k) / at(k, k);
            at(r, k) = 0.0;
            for (int c = k + 1; c < m; ++c) at(r, c) -= factor * at(k, c);
            b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(k)];
        }
    }
    for (int r = m - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < m; ++c) s -= at(r, c) * b[static_cast<std::size_t>(c)];
        b[static_cast<std::size_t>(r)] = s / at(r, r);
    }
    return true;
}

// One damped Newton step on the stacked residual, gauge-pinned at alpha_0.
// Row equation 0 is dropped (redundant for balanced targets). Returns true
// when a step reducing the sup-residual was committed.
bool newton_step(const GraphSpec& spec, const NodeTargets& targets,
                 std::vector<double>& alpha, std::vector<double>& beta) {
    const int n = spec.n_nodes;
    const int m = 2 * n - 1;
    std::vector<double> jac(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
    auto aidx = [&](int i) { return i - 1; };
    auto bidx = [&](int j) { return n - 1 + j; };
    auto jref = [&](int r, int c) -> double& {
        return jac[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
                   static_cast<std::size_t>(c)];
    };

    const Margins m0 = margins(spec, alpha, beta);
    const double before = sup_residual(m0, targets);
    for (int i = 1; i < n; ++i)
        rhs[static_cast<std::size_t>(aidx(i))] =
            -(m0.row[static_cast<std::size_t>(i)] - targets.endowments[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j)
        rhs[static_cast<std::size_t>(bidx(j))] =
            -(m0.col[static_cast<std::size_t>(j)] - targets.allocations[static_cast<std::size_t>(j)]);

    for_each_pair(spec, [&](int i, int j, std::int64_t) {
        const double v = var_of(alpha[static_cast<std::size_t>(i)] +
                                    beta[static_cast<std::size_t>(j)],
                                spec.statistics);
        if (i >= 1) {
            jref(aidx(i), aidx(i)) -= v;
            jref(aidx(i), bidx(j)) -= v;
        }
        jref(bidx(j), bidx(j)) -= v;
        if (i >= 1) jref(bidx(j), aidx(i)) -= v;
    });

    if (!lu_solve(jac, rhs, m)) return false;

    for (double scale = 1.0; scale > 1e-8; scale *= 0.5) {
        std::vector<double> na = alpha, nb = beta;
        for (int i = 1; i < n; ++i)
            na[static_cast<std::size_t>(i)] += scale * rhs[static_cast<std::size_t>(aidx(i))];
        for (int j = 0; j < n; ++j)
            nb[static_cast<std::size_t>(j)] += scale * rhs[static_cast<std::size_t>(bidx(j))];
        if (spec.statistics == Statistics::bosonic) {
            bool feasible = true;
            for_each_pair(spec, [&](int i, int j, std::int64_t) {
                if (na[static_cast<std::size_t>(i)] + nb[static_cast<std::size_t>(j)] <= 0.0)
                    feasible = false;
            });
            if (!feasible) continue;
        }
        if (sup_residual(margins(spec, na, nb), targets) < before) {
            alpha = std::move(na);
            beta = std::move(nb);
            return true;
        }
    }
    return false;
}

void gauge_normalize(std::vector<double>& alpha, std::vector<double>& beta) {
    const double c = alpha[0];
    for (double& a : alpha) a -= c;
    for (double& b : beta) b += c;
}

}  // namespace

FitResult fit_strengths(const NodeTargets& targets, const GraphSpec& spec,
                        double temperature, const FitOptions& options) {
    spec.validate();
    targets.validate();
    if (!spec.directed) throw std::invalid_argument("fit_strengths: directed spec required");
    if (spec.n_nodes != targets.n())
        throw std::invalid_argument("fit_strengths: spec size != target size");
    if (!(temperature > 0.0)) throw std::invalid_argument("fit_strengths: temperature must be > 0");
    const int n = spec.n_nodes;
    const double partners = static_cast<double>(n - 1 + (spec.self_loops ? 1 : 0));
    if (partners < 1.0) throw ModelError("fit_strengths: no admissible pairs");

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = targets.endowments[static_cast<std::size_t>(i)];
        const double x = targets.allocations[static_cast<std::size_t>(i)];
        if (!(w > 0.0) || !(x > 0.0))
            throw ModelError("fit_strengths: zero targets force divergent multipliers");
        if (spec.statistics == Statistics::fermionic && (w >= partners || x >= partners))
            throw ModelError("fit_strengths: fermionic target exceeds admissible pair count");
        total += w;
    }

    // Start all multipliers at the level matching the mean per-pair occupation.
    const double mean_occ = total / (static_cast<double>(n) * partners);
    double x0;
    if (spec.statistics == Statistics::bosonic) {
        x0 = std::log1p(1.0 / mean_occ);
    } else {
        const double p0 = std::min(mean_occ, 1.0 - 1e-9);
        x0 = std::log(1.0 / p0 - 1.0);
    }
    std::vector<double> alpha(static_cast<std::size_t>(n), 0.5 * x0);
    std::vector<double> beta(static_cast<std::size_t>(n), 0.5 * x0);

    auto row_offsets = [&](int i) {
        std::vector<double> off;
        off.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            if (j != i || spec.self_loops) off.push_back(beta[static_cast<std::size_t>(j)]);
        return off;
    };
    auto col_offsets = [&](int j) {
        std::vector<double> off;
        off.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (i != j || spec.self_loops) off.push_back(alpha[static_cast<std::size_t>(i)]);
        return off;
    };

    int iterations = 0;
    double residual = sup_residual(margins(spec, alpha, beta), targets);
    double previous = std::numeric_limits<double>::infinity();
    while (iterations < options.max_iterations && residual > options.tolerance) {
        for (int i = 0; i < n; ++i)
            alpha[static_cast<std::size_t>(i)] =
                solve_multiplier(row_offsets(i), targets.endowments[static_cast<std::size_t>(i)],
                                 spec.statistics, alpha[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j)
            beta[static_cast<std::size_t>(j)] =
                solve_multiplier(col_offsets(j), targets.allocations[static_cast<std::size_t>(j)],
                                 spec.statistics, beta[static_cast<std::size_t>(j)]);
        gauge_normalize(alpha, beta);
        ++iterations;
        residual = sup_residual(margins(spec, alpha, beta), targets);
        if (residual > options.tolerance && residual > 0.5 * previous &&
            iterations < options.max_iterations) {
            if (newton_step(spec, targets, alpha, beta)) {
                gauge_normalize(alpha, beta);
                ++iterations;
                residual = sup_residual(margins(spec, alpha, beta), targets);
            }
        }
        previous = residual;
    }
    gauge_normalize(alpha, beta);

    std::vector<double> lambda(static_cast<std::size_t>(n)), theta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        lambda[static_cast<std::size_t>(i)] = temperature * alpha[static_cast<std::size_t>(i)];
        theta[static_cast<std::size_t>(i)] = temperature * beta[static_cast<std::size_t>(i)];
    }

    FitResult result{EnergyLevels(spec, AdditiveLevels(lambda, theta)), residual, iterations,
                     residual <= options.tolerance, 0.0};

    std::vector<double> row_var(static_cast<std::size_t>(n), 0.0);
    std::vector<double> col_var(static_cast<std::size_t>(n), 0.0);
    for_each_pair(spec, [&](int i, int j, std::int64_t) {
        const double v = var_of(alpha[static_cast<std::size_t>(i)] +
                                    beta[static_cast<std::size_t>(j)],
                                spec.statistics);
        row_var[static_cast<std::size_t>(i)] += v;
        col_var[static_cast<std::size_t>(j)] += v;
    });
    for (int i = 0; i < n; ++i) {
        result.max_strength_cv =
            std::max({result.max_strength_cv,
                      std::sqrt(row_var[static_cast<std::size_t>(i)]) /
                          targets.endowments[static_cast<std::size_t>(i)],
                      std::sqrt(col_var[static_cast<std::size_t>(i)]) /
                          targets.allocations[static_cast<std::size_t>(i)]});
    }
    return result;
}

double solve_mu_for_links(const EnergyLevels& levels, double temperature,
                          double target_links) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("solve_mu_for_links: temperature must be > 0");
    const GraphSpec& spec = levels.spec();
    const double volume = static_cast<double>(spec.volume());
    if (volume < 1.0) throw ModelError("solve_mu_for_links: empty pair set");
    if (spec.statistics == Statistics::fermionic) {
        if (!(target_links > 0.0 && target_links < volume))
            throw ModelError("solve_mu_for_links: fermionic target must lie in (0, V)");
    } else if (!(target_links > 0.0)) {
        throw ModelError("solve_mu_for_links: bosonic target must be positive");
    }

    const double eps_min = levels.min_value();
    double lo, hi;
    if (spec.statistics == Statistics::fermionic) {
        double step = std::max(temperature, 1.0);
        lo = eps_min;
        while (occupation_sum(levels, temperature, lo) >= target_links) {
            lo -= step;
            step *= 2.0;
        }
        step = std::max(temperature, 1.0);
        hi = levels.max_value();
        while (occupation_sum(levels, temperature, hi) <= target_links) {
            hi += step;
            step *= 2.0;
        }
    } else {
        double gap = std::max(temperature, 1.0);
        while (occupation_sum(levels, temperature, eps_min - gap) > target_links) gap *= 2.0;
        lo = eps_min - gap;
        gap = std::min(gap, std::max(temperature, 1.0));
        while (occupation_sum(levels, temperature, eps_min - gap) < target_links) {
            gap *= 0.5;
            if (gap < 1e-300) throw ModelError("solve_mu_for_links: target unreachable");
        }
        hi = eps_min - gap;
    }

    const double tol = 1e-10 * std::max(std::abs(target_links), 1e-300);
    double mu = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mu = 0.5 * (lo + hi);
        const double links = occupation_sum(levels, temperature, mu);
        if (std::abs(links - target_links) <= tol) break;
        if (links < target_links)
            lo = mu;
        else
            hi = mu;
        if (hi - lo <= 1e-16 * (std::abs(lo) + std::abs(hi) + 1.0)) break;
    }
    for (int it = 0; it < 50; ++it) {
        const double links = occupation_sum(levels, temperature, mu);
        if (std::abs(links - target_links) <= tol) break;
        const double slope = variance_sum(levels, temperature, mu) / temperature;
        if (!(slope > 0.0)) break;
        double next = mu + (target_links - links) / slope;
        next = std::clamp(next, lo, hi);
        if (next == mu) break;
        mu = next;
    }
    return mu;
}

}  // namespace netens
