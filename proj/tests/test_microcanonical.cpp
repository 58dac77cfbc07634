#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "netens/analytic.hpp"
#include "netens/microcanonical.hpp"
#include "netens/numeric.hpp"

using namespace netens;

namespace {

const GraphSpec und3{3, false, false};
const GraphSpec und4{4, false, false};

std::vector<Configuration> collect_fixed(const GraphSpec& spec, std::uint64_t links) {
    std::vector<Configuration> out;
    enumerate_fixed_links(spec, links, [&](const Configuration& c) { out.push_back(c); });
    return out;
}

// Exhaustive oracle: every matrix with cell bounds min(row, col margin),
// margins checked only at the end (no feasibility pruning).
std::uint64_t brute_force_table_count(const std::vector<std::int64_t>& rows,
                                      const std::vector<std::int64_t>& cols) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::int64_t> cells(static_cast<std::size_t>(n * n), 0);
    std::uint64_t count = 0;
    std::function<void(int)> walk = [&](int cell) {
        if (cell == n * n) {
            for (int i = 0; i < n; ++i) {
                std::int64_t r = 0, c = 0;
                for (int k = 0; k < n; ++k) {
                    r += cells[static_cast<std::size_t>(i * n + k)];
                    c += cells[static_cast<std::size_t>(k * n + i)];
                }
                if (r != rows[static_cast<std::size_t>(i)] ||
                    c != cols[static_cast<std::size_t>(i)])
                    return;
            }
            ++count;
            return;
        }
        const int i = cell / n, j = cell % n;
        const std::int64_t bound =
            std::min(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        for (std::int64_t v = 0; v <= bound; ++v) {
            cells[static_cast<std::size_t>(cell)] = v;
            walk(cell + 1);
        }
        cells[static_cast<std::size_t>(cell)] = 0;
    };
    walk(0);
    return count;
}

NodeTargets make_targets(std::vector<double> omega, std::vector<double> x_star) {
    return NodeTargets{std::move(omega), std::move(x_star)};
}

}  // namespace

TEST_CASE("fixed-link counts and enumeration") {
    CHECK(fixed_links_count(und3, 2) == 3);
    CHECK(collect_fixed(und3, 2).size() == 3);
    CHECK(collect_fixed(und3, 0).size() == 1);
    CHECK(collect_fixed(und3, 0)[0].link_count() == 0);
    CHECK(fixed_links_count(und4, 3) == 20);  // C(6,3)
    CHECK(collect_fixed(und4, 3).size() == 20);
}

TEST_CASE("fixed-link enumeration is unique, canonical and complete") {
    std::set<std::vector<std::uint64_t>> seen;
    enumerate_fixed_links(und4, 2, [&](const Configuration& c) {
        CHECK(c.link_count() == 2);
        CHECK(seen.insert(c.occupations()).second);
    });
    CHECK(seen.size() == 15);
}

TEST_CASE("enumeration cap raises ResourceError") {
    const GraphSpec und10{10, false, false};
    CHECK_THROWS_AS(fixed_links_count(und10, 20, 1000), ResourceError);
    CHECK_THROWS_AS(enumerate_fixed_links(und10, 20, [](const Configuration&) {}, 1000),
                    ResourceError);
}

TEST_CASE("degenerate spectrum collapses to one bin with S = ln C(V, L)") {
    const EnergyLevels levels(und3, ConstantLevels{1.5});
    const EnergyHistogram hist = fixed_links_energy_histogram(und3, 2, levels);
    CHECK(hist.bins() == 1);
    CHECK(hist.counts[0] == 3);
    CHECK(hist.total == 3);
    CHECK(hist.entropy_at(0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(hist.bin_edges.front() <= 3.0);
    CHECK(hist.bin_edges.back() >= 3.0);
}

TEST_CASE("constant levels give Gamma(eps L) = C(V, L)") {
    for (std::uint64_t links = 0; links <= 6; ++links) {
        const EnergyLevels levels(und4, ConstantLevels{0.7});
        const EnergyHistogram hist = fixed_links_energy_histogram(und4, links, levels);
        const auto expected = binomial_capped(6, links, kEnumerationCap);
        CHECK(hist.total == *expected);
        std::uint64_t nonzero = 0;
        for (std::uint64_t c : hist.counts) nonzero += c;
        CHECK(nonzero == *expected);
    }
}

TEST_CASE("additive spectrum at L = 1 resolves the three level sums") {
    // theta = (1,2,3): single-link energies are 3, 4, 5, one configuration each
    const EnergyLevels levels(und3, AdditiveLevels{std::vector<double>{1.0, 2.0, 3.0}});
    const EnergyHistogram hist = fixed_links_energy_histogram(und3, 1, levels, 0.5);
    CHECK(hist.total == 3);
    std::vector<std::uint64_t> nonzero;
    for (std::uint64_t c : hist.counts)
        if (c) nonzero.push_back(c);
    CHECK(nonzero == std::vector<std::uint64_t>{1, 1, 1});
}

TEST_CASE("block additivity: the union spectrum is the convolution") {
    // disjoint sub-networks with V1 = 3 and V2 = 6 against a V = 9 geometry
    const GraphSpec dir3_loops{3, true, true};  // V = 9
    const double eps = 1.0;
    for (std::uint64_t links = 0; links <= 9; ++links) {
        const EnergyHistogram whole = fixed_links_energy_histogram(
            dir3_loops, links, EnergyLevels(dir3_loops, ConstantLevels{eps}));
        std::uint64_t convolution = 0;
        for (std::uint64_t l1 = 0; l1 <= std::min<std::uint64_t>(3, links); ++l1) {
            if (links - l1 > 6) continue;
            const EnergyHistogram a = fixed_links_energy_histogram(
                und3, l1, EnergyLevels(und3, ConstantLevels{eps}));
            const EnergyHistogram b = fixed_links_energy_histogram(
                und4, links - l1, EnergyLevels(und4, ConstantLevels{eps}));
            convolution += a.total * b.total;
        }
        CHECK(whole.total == convolution);
    }
}

TEST_CASE("canonical restriction decomposes the grand partition function") {
    // Q = sum_L z^L Z_L, checked by enumeration
    const EnergyLevels levels(und3, GaussianLevels{1.0, 0.4, 6});
    const EnsembleParams params{1.3, 0.2};
    KahanSum q;
    for (std::uint64_t links = 0; links <= 3; ++links) {
        const double log_z_l =
            fixed_links_log_partition(levels, params.temperature, links);
        q.add(std::exp(params.mu * static_cast<double>(links) / params.temperature + log_z_l));
    }
    CHECK(std::log(q.value()) ==
          doctest::Approx(log_grand_partition(levels, params)).epsilon(1e-10));
}

TEST_CASE("market tables on two agents") {
    CHECK(market_table_count(make_targets({1, 1}, {1, 1})) == 2);
    CHECK(market_table_count(make_targets({2, 0}, {0, 2})) == 1);

    std::vector<Configuration> tables;
    enumerate_market_tables(make_targets({2, 0}, {0, 2}),
                            [&](const Configuration& c) { tables.push_back(c); });
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].occupation(0, 0) == 0);
    CHECK(tables[0].occupation(0, 1) == 2);
    CHECK(tables[0].occupation(1, 0) == 0);
    CHECK(tables[0].occupation(1, 1) == 0);
}

TEST_CASE("unit margins on three agents give the six permutation matrices") {
    std::uint64_t count = 0;
    enumerate_market_tables(make_targets({1, 1, 1}, {1, 1, 1}), [&](const Configuration& c) {
        ++count;
        for (int i = 0; i < 3; ++i) {
            std::uint64_t row = 0, col = 0;
            for (int j = 0; j < 3; ++j) {
                row += c.occupation(i, j);
                col += c.occupation(j, i);
            }
            CHECK(row == 1);
            CHECK(col == 1);
        }
    });
    CHECK(count == 6);
    CHECK(brute_force_table_count({1, 1, 1}, {1, 1, 1}) == 6);
}

TEST_CASE("margins and excess demand hold for every enumerated table") {
    const NodeTargets targets = make_targets({3, 1, 2}, {2, 2, 2});
    const auto z = targets.excess_demand();
    enumerate_market_tables(targets, [&](const Configuration& c) {
        for (int i = 0; i < 3; ++i) {
            std::int64_t row = 0, col = 0;
            for (int j = 0; j < 3; ++j) {
                row += static_cast<std::int64_t>(c.occupation(i, j));
                col += static_cast<std::int64_t>(c.occupation(j, i));
            }
            CHECK(row == static_cast<std::int64_t>(targets.endowments[static_cast<std::size_t>(i)]));
            CHECK(col == static_cast<std::int64_t>(targets.allocations[static_cast<std::size_t>(i)]));
            CHECK(col - row == z[static_cast<std::size_t>(i)]);
        }
    });
}

TEST_CASE("table counts match the exhaustive oracle") {
    testutil::Rand rand(404);
    int checked = 0;
    while (checked < 12) {
        const int n = static_cast<int>(rand.int_range(2, 3));
        const std::int64_t budget = rand.int_range(0, n == 2 ? 8 : 6);
        NodeTargets targets = testutil::random_nonnegative_targets(rand, n, 0);
        // redistribute `budget` units over endowments and allocations
        for (std::int64_t u = 0; u < budget; ++u) {
            targets.endowments[static_cast<std::size_t>(rand.int_range(0, n - 1))] += 1.0;
            targets.allocations[static_cast<std::size_t>(rand.int_range(0, n - 1))] += 1.0;
        }
        std::vector<std::int64_t> rows, cols;
        for (double w : targets.endowments) rows.push_back(static_cast<std::int64_t>(w));
        for (double x : targets.allocations) cols.push_back(static_cast<std::int64_t>(x));
        CHECK(market_table_count(targets) == brute_force_table_count(rows, cols));
        ++checked;
    }
    // a four-agent case with a small budget
    CHECK(market_table_count(make_targets({1, 1, 1, 1}, {1, 1, 1, 1})) ==
          brute_force_table_count({1, 1, 1, 1}, {1, 1, 1, 1}));
}

TEST_CASE("market enumeration rejects bad inputs") {
    CHECK_THROWS_AS(market_table_count(make_targets({1, 1}, {1, 2})), ModelError);
    CHECK_THROWS_AS(market_table_count(make_targets({0.5, 0.5}, {0.5, 0.5})), ModelError);
    CHECK_THROWS_AS(market_table_count(make_targets({4, 4, 4}, {4, 4, 4}), 10), ResourceError);
}

TEST_CASE("uniform table sampling") {
    const NodeTargets targets = make_targets({1, 1}, {1, 1});
    int identity = 0;
    const int draws = 800;
    for (int d = 0; d < draws; ++d) {
        const Configuration table =
            sample_market_table(targets, 9, static_cast<std::uint64_t>(d));
        if (table.occupation(0, 0) == 1) ++identity;
    }
    // each of the two tables with frequency 1/2 within 3 binomial sigmas
    const double freq = static_cast<double>(identity) / draws;
    const double sigma = std::sqrt(0.25 / draws);
    CHECK(std::abs(freq - 0.5) < 3 * sigma);

    // the forced instance always yields its unique table
    const NodeTargets forced = make_targets({2, 0}, {0, 2});
    for (int d = 0; d < 5; ++d)
        CHECK(sample_market_table(forced, 1, static_cast<std::uint64_t>(d)).occupation(0, 1) == 2);

    // same seed, same draw sequence
    for (int d = 0; d < 5; ++d)
        CHECK(sample_market_table(targets, 7, static_cast<std::uint64_t>(d)) ==
              sample_market_table(targets, 7, static_cast<std::uint64_t>(d)));
}
