#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "netens/core.hpp"

namespace netens {

/// eps_ij = value on every admissible pair.
struct ConstantLevels {
    double value = 0.0;
};

/// eps_ij = out_factors[i] + in_factors[j]; undirected specs require
/// out_factors == in_factors (eps_ij = theta_i + theta_j).
struct AdditiveLevels {
    std::vector<double> out_factors;
    std::vector<double> in_factors;

    AdditiveLevels() = default;
    AdditiveLevels(std::vector<double> out, std::vector<double> in)
        : out_factors(std::move(out)), in_factors(std::move(in)) {}
    /// Symmetric form for undirected specs.
    explicit AdditiveLevels(std::vector<double> theta)
        : out_factors(theta), in_factors(std::move(theta)) {}
};

/// Independent draws eps_ij ~ Normal(mean, sd), assigned to pairs in
/// canonical order from the seeded counter stream; regeneration with the
/// same seed reproduces the matrix bit-for-bit.
struct GaussianLevels {
    double mean = 0.0;
    double sd = 1.0;
    std::uint64_t seed = 0;
};

/// Values supplied directly (e.g. loaded from CSV).
struct ExplicitLevels {};

using LevelGenerator = std::variant<ConstantLevels, AdditiveLevels, GaussianLevels, ExplicitLevels>;

/// Energy-level matrix eps_ij over the admissible pairs of a spec, plus the
/// description of how it was generated.
class EnergyLevels {
public:
    EnergyLevels(GraphSpec spec, const LevelGenerator& generator);

    static EnergyLevels from_values(GraphSpec spec, std::vector<double> values);

    const GraphSpec& spec() const { return spec_; }
    const LevelGenerator& generator() const { return generator_; }
    const std::vector<double>& values() const { return eps_; }

    double at(int i, int j) const { return eps_[static_cast<std::size_t>(spec_.pair_index(i, j))]; }
    double at_index(std::int64_t index) const { return eps_[static_cast<std::size_t>(index)]; }

    double min_value() const;
    double max_value() const;

    bool additive() const { return std::holds_alternative<AdditiveLevels>(generator_); }

private:
    EnergyLevels(GraphSpec spec, LevelGenerator generator, std::vector<double> values);

    GraphSpec spec_;
    LevelGenerator generator_;
    std::vector<double> eps_;
};

EnergyLevels generate_levels(const GraphSpec& spec, const LevelGenerator& generator);

/// H = sum over admissible pairs of eps_ij * sigma_ij.
double energy(const Configuration& config, const EnergyLevels& levels);

}  // namespace netens
