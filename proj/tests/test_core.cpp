#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "netens/core.hpp"

using namespace netens;

TEST_CASE("volume per geometry") {
    CHECK(GraphSpec{10, true, false}.volume() == 90);
    CHECK(GraphSpec{1, false, false}.volume() == 0);
    CHECK(GraphSpec{10, false, false}.volume() == 45);
    CHECK(GraphSpec{10, true, true}.volume() == 100);
    CHECK(GraphSpec{10, false, true}.volume() == 55);
}

TEST_CASE("admissible pair enumeration order") {
    using P = std::pair<int, int>;
    CHECK(admissible_pairs(GraphSpec{3, false, false}) ==
          std::vector<P>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(admissible_pairs(GraphSpec{2, true, false}) == std::vector<P>{{0, 1}, {1, 0}});
    CHECK(admissible_pairs(GraphSpec{2, true, true}) ==
          std::vector<P>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("volume equals pair count for every geometry up to N = 50") {
    for (int n = 1; n <= 50; ++n) {
        for (bool directed : {false, true}) {
            for (bool loops : {false, true}) {
                const GraphSpec spec{n, directed, loops};
                const auto pairs = admissible_pairs(spec);
                REQUIRE(static_cast<std::int64_t>(pairs.size()) == spec.volume());
                // pair_index/pair_at agree with the enumeration
                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    const auto [i, j] = pairs[k];
                    REQUIRE(spec.pair_index(i, j) == static_cast<std::int64_t>(k));
                    REQUIRE(spec.pair_at(static_cast<std::int64_t>(k)) == pairs[k]);
                }
            }
        }
    }
}

TEST_CASE("undirected pairs are stored once and read symmetrically") {
    Configuration config(GraphSpec{4, false, false});
    config.set_occupation(2, 1, 1);
    CHECK(config.occupation(1, 2) == 1);
    CHECK(config.occupation(2, 1) == 1);
    CHECK(config.link_count() == 1);
}

TEST_CASE("fermionic occupations are binary") {
    Configuration config(GraphSpec{3, false, false, Statistics::fermionic});
    CHECK_THROWS_AS(config.set_occupation(0, 1, 2), std::invalid_argument);
    Configuration bosonic(GraphSpec{3, true, true, Statistics::bosonic});
    bosonic.set_occupation(0, 0, 17);
    CHECK(bosonic.link_count() == 17);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((GraphSpec{0, false, false}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(Configuration(GraphSpec{0, false, false}), std::invalid_argument);
}

TEST_CASE("ensemble params") {
    CHECK_THROWS_AS((EnsembleParams{0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((EnsembleParams{-1.0, 1.0}.validate()), std::invalid_argument);
    const EnsembleParams params{2.0, 1.0};
    params.validate();
    CHECK(params.fugacity() == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
}

TEST_CASE("node targets conservation") {
    NodeTargets balanced{{2.0, 1.0}, {1.0, 2.0}};
    balanced.validate();
    CHECK(balanced.integral());
    CHECK(balanced.excess_demand() == std::vector<std::int64_t>{-1, 1});

    NodeTargets unbalanced{{2.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(unbalanced.validate(), ModelError);

    NodeTargets negative{{-1.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}
