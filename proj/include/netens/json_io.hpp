#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "netens/core.hpp"
#include "netens/hamiltonian.hpp"

namespace netens {

// Wire formats:
//   spec:      {"n_nodes":10,"directed":false,"self_loops":false,"statistics":"fermionic"}
//   generator: {"kind":"constant","epsilon":1.0}
//              {"kind":"additive","lambda":[...],"theta":[...]}
//              {"kind":"gaussian_iid","mean":1.0,"sd":0.5,"seed":42}
//              {"kind":"explicit","values":[...]}
//   levels:    {"spec":{...},"generator":{...}}

nlohmann::json spec_to_json(const GraphSpec& spec);
GraphSpec spec_from_json(const nlohmann::json& j);

nlohmann::json generator_to_json(const LevelGenerator& generator, const EnergyLevels* levels);
LevelGenerator generator_from_json(const nlohmann::json& j, std::vector<double>* explicit_values);

nlohmann::json levels_to_json(const EnergyLevels& levels);
EnergyLevels levels_from_json(const nlohmann::json& j);

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace netens
