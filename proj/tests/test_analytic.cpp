#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "netens/analytic.hpp"
#include "netens/fit.hpp"
#include "netens/hamiltonian.hpp"
#include "netens/numeric.hpp"

using namespace netens;

namespace {

const GraphSpec und2{2, false, false};                           // V = 1
const GraphSpec und3{3, false, false};                           // V = 3
const GraphSpec dir2{2, true, false};                            // V = 2
const GraphSpec bos1{2, false, false, Statistics::bosonic};      // V = 1

// Brute-force oracles: direct Boltzmann sums over single-level occupations.
double brute_occupation_moment(double eps, double mu, double t, int max_n, int power) {
    double num = 0.0, den = 0.0;
    for (int n = 0; n <= max_n; ++n) {
        const double w = std::exp((mu - eps) * n / t);
        num += std::pow(n, power) * w;
        den += w;
    }
    return num / den;
}

double brute_mean(double eps, double mu, double t, int max_n) {
    return brute_occupation_moment(eps, mu, t, max_n, 1);
}

double brute_variance(double eps, double mu, double t, int max_n) {
    const double m1 = brute_occupation_moment(eps, mu, t, max_n, 1);
    return brute_occupation_moment(eps, mu, t, max_n, 2) - m1 * m1;
}

}  // namespace

TEST_CASE("log grand partition on small fermionic specs") {
    // single pair at mu = eps: factor 1 + 1
    const EnergyLevels one(und2, ConstantLevels{1.0});
    CHECK(log_grand_partition(one, {1.0, 1.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    // two identical directed pairs
    const EnergyLevels two(dir2, ConstantLevels{1.0});
    CHECK(log_grand_partition(two, {1.0, 1.0}) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(log_grand_partition(two, {1.0, 1.0}) == doctest::Approx(1.386294).epsilon(1e-6));
}

TEST_CASE("bosonic log grand partition and divergence") {
    // (mu - eps)/T = -log 2: geometric series sums to 2
    const EnergyLevels levels(bos1, ConstantLevels{std::log(2.0)});
    CHECK(log_grand_partition(levels, {1.0, 0.0}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_grand_partition(levels, {1.0, std::log(2.0)}), ModelError);
    CHECK_THROWS_AS(log_grand_partition(levels, {1.0, 1.0}), ModelError);
}

TEST_CASE("expected occupation against two-term and geometric brute force") {
    CHECK(expected_occupation(1.0, {1.0, 1.0}, Statistics::fermionic) == 0.5);
    CHECK(expected_occupation(1.0, {123.0, 1.0}, Statistics::fermionic) == 0.5);

    const double p = expected_occupation(1.0, {1.0, 10.0}, Statistics::fermionic);
    CHECK(p == doctest::Approx(brute_mean(1.0, 10.0, 1.0, 1)).epsilon(1e-15));
    CHECK(p == doctest::Approx(0.9998766054240137).epsilon(1e-12));

    // bosonic at (eps - mu)/T = log 2: mean 1
    const double n = expected_occupation(std::log(2.0), {1.0, 0.0}, Statistics::bosonic);
    CHECK(n == doctest::Approx(brute_mean(std::log(2.0), 0.0, 1.0, 60)).epsilon(1e-14));
    CHECK(n == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(expected_occupation(1.0, {1.0, 1.0}, Statistics::bosonic), ModelError);
}

TEST_CASE("occupation variance against brute force") {
    CHECK(occupation_variance(1.0, {1.0, 1.0}, Statistics::fermionic) == doctest::Approx(0.25));

    const double v = occupation_variance(1.0, {1.0, 10.0}, Statistics::fermionic);
    CHECK(v == doctest::Approx(brute_variance(1.0, 10.0, 1.0, 1)).epsilon(1e-12));
    CHECK(v == doctest::Approx(1.2337e-4).epsilon(1e-4));

    const double bv = occupation_variance(std::log(2.0), {1.0, 0.0}, Statistics::bosonic);
    CHECK(bv == doctest::Approx(brute_variance(std::log(2.0), 0.0, 1.0, 60)).epsilon(1e-12));
    CHECK(bv == doctest::Approx(2.0).epsilon(1e-12));

    testutil::Rand rand(77);
    for (int trial = 0; trial < 25; ++trial) {
        const double eps = rand.range(-1, 1), mu = rand.range(-2, 2), t = rand.range(0.2, 5);
        CHECK(expected_occupation(eps, {t, mu}, Statistics::fermionic) ==
              doctest::Approx(brute_mean(eps, mu, t, 1)).epsilon(1e-13));
        CHECK(occupation_variance(eps, {t, mu}, Statistics::fermionic) ==
              doctest::Approx(brute_variance(eps, mu, t, 1)).epsilon(1e-12));
        const double gap = rand.range(0.5, 3.0);  // (eps - mu)/T
        CHECK(expected_occupation(mu + gap * t, {t, mu}, Statistics::bosonic) ==
              doctest::Approx(brute_mean(mu + gap * t, mu, t, 200)).epsilon(1e-12));
    }
}

TEST_CASE("strength covariance cases") {
    const EnergyLevels levels(und3, AdditiveLevels{std::vector<double>{0.5, 0.5, 0.5}});
    const EnsembleParams at_half{1.0, 1.0};  // mu = eps = 1
    CHECK(strength_covariance(levels, at_half, 0, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(strength_covariance(levels, at_half, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(link_covariance(levels, at_half, {0, 1}, {1, 2}) == 0.0);
    CHECK(link_covariance(levels, at_half, {0, 1}, {0, 1}) == doctest::Approx(0.25));
    CHECK(link_covariance(levels, at_half, {0, 1}, {1, 0}) == doctest::Approx(0.25));

    const EnergyLevels plain(und3, ConstantLevels{1.0});
    CHECK_THROWS_AS(strength_covariance(plain, at_half, 0, 1), std::invalid_argument);
}

TEST_CASE("expected links") {
    const EnergyLevels two(dir2, ConstantLevels{1.0});
    CHECK(expected_links(two, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));

    const GraphSpec und10{10, false, false};
    const EnergyLevels saturated(und10, ConstantLevels{0.0});
    CHECK(expected_links(saturated, {1.0, 50.0}) == doctest::Approx(45.0).epsilon(1e-9));

    const EnergyLevels bose(bos1, ConstantLevels{std::log(2.0)});
    CHECK(expected_links(bose, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("expected links equals the occupation sum on random instances") {
    testutil::Rand rand(31);
    for (int trial = 0; trial < 10; ++trial) {
        const GraphSpec spec{static_cast<int>(rand.int_range(2, 6)), rand.uniform() < 0.5,
                             false,
                             trial % 2 ? Statistics::bosonic : Statistics::fermionic};
        if (spec.volume() == 0) continue;
        const EnergyLevels levels(spec,
                                  GaussianLevels{2.0, 0.3, static_cast<std::uint64_t>(trial)});
        const double mu = spec.statistics == Statistics::bosonic
                              ? levels.min_value() - rand.range(0.2, 1.0)
                              : rand.range(-1, 3);
        const EnsembleParams params{rand.range(0.3, 4.0), mu};
        KahanSum direct;
        for (double eps : levels.values())
            direct.add(expected_occupation(eps, params, spec.statistics));
        // expected_links also runs its internal finite-difference cross-check
        CHECK(expected_links(levels, params) ==
              doctest::Approx(direct.value()).epsilon(1e-12));
    }
}

TEST_CASE("expected links self-check survives high bosonic occupations") {
    // regimes where the finite-difference cross-check is delicate: per-link
    // occupations up to ~1e5 (steep dlogQ/dlogz) and tiny temperatures
    // (step quantization against mu)
    const GraphSpec spec{12, false, false, Statistics::bosonic};
    const EnergyLevels levels(spec, GaussianLevels{-4.9, 1.0, 203});
    struct Point {
        double t, gap_scale;
    };
    for (const Point& point : {Point{4.46e-3, 2e-3}, Point{1e-3, 1e-5}, Point{2.1e2, 1e-4},
                               Point{1e5, 1e-2}}) {
        const double mu = levels.min_value() - point.gap_scale * point.t;
        const EnsembleParams params{point.t, mu};
        KahanSum direct;
        for (double eps : levels.values())
            direct.add(expected_occupation(eps, params, Statistics::bosonic));
        CHECK(expected_links(levels, params) ==
              doctest::Approx(direct.value()).epsilon(1e-12));
    }
}

TEST_CASE("graph log probability on the half-filled three-pair spec") {
    const EnergyLevels levels(und3, ConstantLevels{1.0});
    const EnsembleParams params{1.0, 1.0};
    testutil::enumerate_all_configurations(und3, [&](const Configuration& config) {
        CHECK(graph_log_probability(config, levels, params) ==
              doctest::Approx(-3.0 * std::log(2.0)).epsilon(1e-14));
    });
}

TEST_CASE("graph probabilities sum to one by enumeration") {
    const EnergyLevels levels(und3, GaussianLevels{1.0, 0.5, 3});
    const EnsembleParams params{1.3, 0.7};
    KahanSum total;
    testutil::enumerate_all_configurations(und3, [&](const Configuration& config) {
        total.add(std::exp(graph_log_probability(config, levels, params)));
    });
    CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalization holds for every fermionic geometry with V <= 12") {
    testutil::Rand rand(55);
    const GraphSpec specs[] = {
        {2, false, false}, {3, false, false}, {4, false, false}, {5, false, false},
        {2, false, true},  {3, false, true},  {4, false, true},  {2, true, false},
        {3, true, false},  {4, true, false},  {2, true, true},   {3, true, true},
    };
    for (const GraphSpec& spec : specs) {
        REQUIRE(spec.volume() <= 12);
        const EnergyLevels levels(
            spec, GaussianLevels{1.0, 0.5, static_cast<std::uint64_t>(spec.volume() + 17)});
        const EnsembleParams params{rand.range(0.5, 3.0), rand.range(-1.0, 2.0)};
        KahanSum total;
        testutil::enumerate_all_configurations(spec, [&](const Configuration& config) {
            total.add(std::exp(graph_log_probability(config, levels, params)));
        });
        CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("empty-graph log probability in the sparse regime") {
    const GraphSpec und4{4, false, false};
    const EnergyLevels levels(und4, ConstantLevels{1.0});
    const double t = 2.0;
    const EnsembleParams params{t, 1.0 - 10.0 * t};  // (mu - eps)/T = -10
    const double expected = -static_cast<double>(und4.volume()) * std::log1p(std::exp(-10.0));
    CHECK(graph_log_probability(Configuration(und4), levels, params) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("thermo report at half filling gives S = V log 2") {
    const GraphSpec und6{6, false, false};  // V = 15
    const EnergyLevels levels(und6, ConstantLevels{1.0});
    const ThermoReport report = thermo_report(levels, {1.0, 1.0}, CvConvention::fixed_mu);
    CHECK(report.entropy ==
          doctest::Approx(static_cast<double>(und6.volume()) * std::log(2.0)).epsilon(1e-12));
    CHECK(report.expected_links == doctest::Approx(7.5).epsilon(1e-12));

    // fixed-L at the same target recovers mu = eps and the same entropy
    const ThermoReport fixed = thermo_report(levels, {1.0, 0.0}, CvConvention::fixed_links, 7.5);
    CHECK(fixed.params.mu == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fixed.entropy == doctest::Approx(report.entropy).epsilon(1e-9));
}

TEST_CASE("thermo report identities") {
    testutil::Rand rand(99);
    const EnergyLevels levels(GraphSpec{5, false, false}, GaussianLevels{1.0, 0.5, 8});
    for (int trial = 0; trial < 6; ++trial) {
        const EnsembleParams params{rand.range(0.3, 5.0), rand.range(-1.0, 2.0)};
        const auto convention = trial % 2 ? CvConvention::fixed_mu : CvConvention::fixed_links;
        const ThermoReport r = thermo_report(levels, params, convention);
        CHECK(r.helmholtz ==
              doctest::Approx(r.energy - r.params.temperature * r.entropy).epsilon(1e-9));
        CHECK(r.pressure_volume ==
              doctest::Approx(r.params.temperature * log_grand_partition(levels, r.params))
                  .epsilon(1e-9));
        CHECK(r.pressure() == doctest::Approx(r.pressure_volume / 10.0));
    }
}

TEST_CASE("specific heat vanishes in the saturated high-T regime") {
    const EnergyLevels levels(GraphSpec{6, false, false}, ConstantLevels{1.0});
    const double mu = 2.0;
    const double t = 1e6 * std::abs(1.0 - mu);
    for (auto convention : {CvConvention::fixed_links, CvConvention::fixed_mu}) {
        const ThermoReport r = thermo_report(levels, {t, mu}, convention);
        CHECK(std::abs(r.specific_heat) < 1e-6);
    }
}

TEST_CASE("grand-potential entropy equals the Gibbs entropy by enumeration") {
    const GraphSpec und4{4, false, false};  // 64 configurations
    const EnergyLevels levels(und4, GaussianLevels{1.0, 0.5, 21});
    const EnsembleParams params{1.7, 0.4};
    const ThermoReport r = thermo_report(levels, params, CvConvention::fixed_mu);
    KahanSum gibbs;
    testutil::enumerate_all_configurations(und4, [&](const Configuration& config) {
        const double lp = graph_log_probability(config, levels, params);
        gibbs.add(-std::exp(lp) * lp);
    });
    CHECK(r.entropy == doctest::Approx(gibbs.value()).epsilon(1e-8));
}

TEST_CASE("entropy equals the fixed-L temperature derivative of F") {
    const EnergyLevels levels(GraphSpec{5, false, false}, GaussianLevels{1.0, 0.5, 13});
    const EnsembleParams params{1.4, 0.6};
    const ThermoReport center = thermo_report(levels, params, CvConvention::fixed_links);
    const double target = center.expected_links;
    const double t = params.temperature;
    const double dt = 1e-3 * t;
    const ThermoReport hi =
        thermo_report(levels, {t + dt, params.mu}, CvConvention::fixed_links, target);
    const ThermoReport lo =
        thermo_report(levels, {t - dt, params.mu}, CvConvention::fixed_links, target);
    const double slope = -(hi.helmholtz - lo.helmholtz) / (2.0 * dt);
    CHECK(slope == doctest::Approx(center.entropy).epsilon(1e-4));
}

TEST_CASE("fixed-L target validation") {
    const EnergyLevels levels(und3, ConstantLevels{1.0});
    CHECK_THROWS_AS(thermo_report(levels, {1.0, 0.0}, CvConvention::fixed_links, 3.0),
                    ModelError);
    CHECK_THROWS_AS(thermo_report(levels, {1.0, 0.0}, CvConvention::fixed_links, 0.0),
                    ModelError);
    CHECK_THROWS_AS(thermo_report(levels, {1.0, 0.0}, CvConvention::fixed_mu, 1.5),
                    std::invalid_argument);
}

TEST_CASE("T = 1 with additive levels matches the Park-Newman form") {
    testutil::Rand rand(2025);
    // occupations: e^{-(theta_i + theta_j)} / (1 + e^{-(theta_i + theta_j)})
    std::vector<double> theta(5);
    for (double& v : theta) v = rand.range(-1.0, 1.5);
    const GraphSpec und5{5, false, false};
    const EnergyLevels levels(und5, AdditiveLevels{theta});
    const EnsembleParams params{1.0, 0.0};
    for_each_pair(und5, [&](int i, int j, std::int64_t) {
        const double e = std::exp(-(theta[static_cast<std::size_t>(i)] +
                                    theta[static_cast<std::size_t>(j)]));
        CHECK(expected_occupation(levels.at(i, j), params, Statistics::fermionic) ==
              doctest::Approx(e / (1.0 + e)).epsilon(1e-12));
    });

    // graph probabilities: -H(G) - log Z with H = sum eps_ij a_ij
    std::vector<double> theta3 = {0.3, -0.2, 0.8};
    const EnergyLevels small(und3, AdditiveLevels{theta3});
    KahanSum z;
    testutil::enumerate_all_configurations(und3, [&](const Configuration& config) {
        z.add(std::exp(-energy(config, small)));
    });
    const double log_z = std::log(z.value());
    testutil::enumerate_all_configurations(und3, [&](const Configuration& config) {
        CHECK(graph_log_probability(config, small, params) ==
              doctest::Approx(-energy(config, small) - log_z).epsilon(1e-10));
    });
}
