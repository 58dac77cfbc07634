#include "netens/json_io.hpp"

#include <fstream>

namespace netens {

using nlohmann::json;

json spec_to_json(const GraphSpec& spec) {
    return json{{"n_nodes", spec.n_nodes},
                {"directed", spec.directed},
                {"self_loops", spec.self_loops},
                {"statistics", to_string(spec.statistics)}};
}

GraphSpec spec_from_json(const json& j) {
    GraphSpec spec;
    spec.n_nodes = j.at("n_nodes").get<int>();
    spec.directed = j.at("directed").get<bool>();
    spec.self_loops = j.at("self_loops").get<bool>();
    spec.statistics = statistics_from_string(j.at("statistics").get<std::string>());
    spec.validate();
    return spec;
}

json generator_to_json(const LevelGenerator& generator, const EnergyLevels* levels) {
    if (const auto* c = std::get_if<ConstantLevels>(&generator))
        return json{{"kind", "constant"}, {"epsilon", c->value}};
    if (const auto* a = std::get_if<AdditiveLevels>(&generator))
        return json{{"kind", "additive"}, {"lambda", a->out_factors}, {"theta", a->in_factors}};
    if (const auto* g = std::get_if<GaussianLevels>(&generator))
        return json{{"kind", "gaussian_iid"}, {"mean", g->mean}, {"sd", g->sd}, {"seed", g->seed}};
    if (!levels)
        throw std::invalid_argument("explicit generator serialization needs the level values");
    return json{{"kind", "explicit"}, {"values", levels->values()}};
}

LevelGenerator generator_from_json(const json& j, std::vector<double>* explicit_values) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return ConstantLevels{j.at("epsilon").get<double>()};
    if (kind == "additive") {
        if (j.contains("lambda"))
            return AdditiveLevels{j.at("lambda").get<std::vector<double>>(),
                                  j.at("theta").get<std::vector<double>>()};
        return AdditiveLevels{j.at("theta").get<std::vector<double>>()};
    }
    if (kind == "gaussian_iid")
        return GaussianLevels{j.at("mean").get<double>(), j.at("sd").get<double>(),
                              j.at("seed").get<std::uint64_t>()};
    if (kind == "explicit") {
        if (!explicit_values)
            throw std::invalid_argument("explicit generator not accepted here");
        *explicit_values = j.at("values").get<std::vector<double>>();
        return ExplicitLevels{};
    }
    throw std::invalid_argument("unknown level generator kind: " + kind);
}

json levels_to_json(const EnergyLevels& levels) {
    return json{{"spec", spec_to_json(levels.spec())},
                {"generator", generator_to_json(levels.generator(), &levels)}};
}

EnergyLevels levels_from_json(const json& j) {
    const GraphSpec spec = spec_from_json(j.at("spec"));
    std::vector<double> values;
    const LevelGenerator generator = generator_from_json(j.at("generator"), &values);
    if (std::holds_alternative<ExplicitLevels>(generator))
        return EnergyLevels::from_values(spec, std::move(values));
    return EnergyLevels(spec, generator);
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open JSON file: " + path.string());
    json j;
    in >> j;
    return j;
}

void save_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write JSON file: " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace netens
