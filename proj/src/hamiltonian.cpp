#include "netens/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "netens/numeric.hpp"
#include "netens/rng.hpp"

namespace netens {

namespace {

std::vector<double> build_values(const GraphSpec& spec, const LevelGenerator& generator) {
    spec.validate();
    std::vector<double> eps(static_cast<std::size_t>(spec.volume()), 0.0);
    if (const auto* c = std::get_if<ConstantLevels>(&generator)) {
        std::fill(eps.begin(), eps.end(), c->value);
    } else if (const auto* a = std::get_if<AdditiveLevels>(&generator)) {
        const std::size_t n = static_cast<std::size_t>(spec.n_nodes);
        if (a->out_factors.size() != n || a->in_factors.size() != n)
            throw std::invalid_argument("AdditiveLevels: factor length must equal n_nodes");
        if (!spec.directed && a->out_factors != a->in_factors)
            throw std::invalid_argument(
                "AdditiveLevels: undirected specs need symmetric factors");
        for_each_pair(spec, [&](int i, int j, std::int64_t k) {
            eps[static_cast<std::size_t>(k)] = a->out_factors[static_cast<std::size_t>(i)] +
                                               a->in_factors[static_cast<std::size_t>(j)];
        });
    } else if (const auto* g = std::get_if<GaussianLevels>(&generator)) {
        if (!(g->sd >= 0.0)) throw std::invalid_argument("GaussianLevels: sd must be >= 0");
        for_each_pair(spec, [&](int, int, std::int64_t k) {
            eps[static_cast<std::size_t>(k)] =
                g->mean + g->sd * rng::normal(g->seed, 0, static_cast<std::uint64_t>(k));
        });
    } else {
        throw std::invalid_argument("ExplicitLevels require from_values()");
    }
    return eps;
}

}  // namespace

EnergyLevels::EnergyLevels(GraphSpec spec, const LevelGenerator& generator)
    : spec_(spec), generator_(generator), eps_(build_values(spec, generator)) {}

EnergyLevels::EnergyLevels(GraphSpec spec, LevelGenerator generator, std::vector<double> values)
    : spec_(spec), generator_(std::move(generator)), eps_(std::move(values)) {}

EnergyLevels EnergyLevels::from_values(GraphSpec spec, std::vector<double> values) {
    spec.validate();
    if (values.size() != static_cast<std::size_t>(spec.volume()))
        throw std::invalid_argument("EnergyLevels: value count != volume");
    return EnergyLevels(spec, ExplicitLevels{}, std::move(values));
}

double EnergyLevels::min_value() const {
    return eps_.empty() ? 0.0 : *std::min_element(eps_.begin(), eps_.end());
}

double EnergyLevels::max_value() const {
    return eps_.empty() ? 0.0 : *std::max_element(eps_.begin(), eps_.end());
}

EnergyLevels generate_levels(const GraphSpec& spec, const LevelGenerator& generator) {
    return EnergyLevels(spec, generator);
}

double energy(const Configuration& config, const EnergyLevels& levels) {
    if (config.spec() != levels.spec())
        throw std::invalid_argument("energy: configuration and levels use different specs");
    KahanSum sum;
    const auto& occ = config.occupations();
    const auto& eps = levels.values();
    for (std::size_t k = 0; k < occ.size(); ++k)
        sum.add(eps[k] * static_cast<double>(occ[k]));
    return sum.value();
}

}  // namespace netens
