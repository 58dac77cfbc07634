#include "netens/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace netens {

namespace {

std::string fmt17(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

void expect_header(std::ifstream& in, const std::string& wanted,
                   const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != wanted)
        throw std::runtime_error("unexpected CSV header in " + path.string() + ": " + line);
}

}  // namespace

void write_configuration_csv(const Configuration& config, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "i,j,occupation\n";
    for_each_pair(config.spec(), [&](int i, int j, std::int64_t k) {
        out << i << ',' << j << ',' << config.occupations()[static_cast<std::size_t>(k)] << '\n';
    });
}

Configuration read_configuration_csv(const GraphSpec& spec, const std::filesystem::path& path) {
    auto in = open_in(path);
    expect_header(in, "i,j,occupation", path);
    Configuration config(spec);
    std::vector<bool> seen(static_cast<std::size_t>(spec.volume()), false);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) throw std::runtime_error("bad configuration row: " + line);
        const int i = std::stoi(fields[0]);
        const int j = std::stoi(fields[1]);
        const std::uint64_t value = std::stoull(fields[2]);
        const std::int64_t k = spec.pair_index(i, j);
        if (seen[static_cast<std::size_t>(k)])
            throw std::runtime_error("duplicate pair in configuration CSV: " + line);
        seen[static_cast<std::size_t>(k)] = true;
        config.set_occupation_at(k, value);
    }
    for (bool s : seen)
        if (!s) throw std::runtime_error("configuration CSV missing admissible pairs");
    return config;
}

void write_levels_csv(const EnergyLevels& levels, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "i,j,epsilon\n";
    for_each_pair(levels.spec(), [&](int i, int j, std::int64_t k) {
        out << i << ',' << j << ',' << fmt17(levels.values()[static_cast<std::size_t>(k)]) << '\n';
    });
}

EnergyLevels read_levels_csv(const GraphSpec& spec, const std::filesystem::path& path) {
    auto in = open_in(path);
    expect_header(in, "i,j,epsilon", path);
    std::vector<double> values(static_cast<std::size_t>(spec.volume()), 0.0);
    std::vector<bool> seen(values.size(), false);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) throw std::runtime_error("bad levels row: " + line);
        const std::int64_t k = spec.pair_index(std::stoi(fields[0]), std::stoi(fields[1]));
        if (seen[static_cast<std::size_t>(k)])
            throw std::runtime_error("duplicate pair in levels CSV: " + line);
        seen[static_cast<std::size_t>(k)] = true;
        values[static_cast<std::size_t>(k)] = std::stod(fields[2]);
    }
    for (bool s : seen)
        if (!s) throw std::runtime_error("levels CSV missing admissible pairs");
    return EnergyLevels::from_values(spec, std::move(values));
}

void write_targets_csv(const NodeTargets& targets, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "node,omega,x_star\n";
    for (int i = 0; i < targets.n(); ++i)
        out << i << ',' << fmt17(targets.endowments[static_cast<std::size_t>(i)]) << ','
            << fmt17(targets.allocations[static_cast<std::size_t>(i)]) << '\n';
}

NodeTargets read_targets_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    expect_header(in, "node,omega,x_star", path);
    NodeTargets targets;
    std::string line;
    int expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) throw std::runtime_error("bad targets row: " + line);
        if (std::stoi(fields[0]) != expected++)
            throw std::runtime_error("targets CSV nodes must be 0..N-1 in order");
        targets.endowments.push_back(std::stod(fields[1]));
        targets.allocations.push_back(std::stod(fields[2]));
    }
    targets.validate();
    return targets;
}

void write_histogram_csv(const EnergyHistogram& histogram, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "bin_low,bin_high,count,entropy\n";
    for (std::size_t b = 0; b < histogram.bins(); ++b)
        out << fmt17(histogram.bin_edges[b]) << ',' << fmt17(histogram.bin_edges[b + 1]) << ','
            << histogram.counts[b] << ',' << fmt17(histogram.entropy_at(b)) << '\n';
}

void write_thermo_csv(const std::vector<ThermoReport>& reports,
                      const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "T,mu,E,S,F,PV,L_bar,C_V,convention\n";
    for (const ThermoReport& r : reports)
        out << fmt17(r.params.temperature) << ',' << fmt17(r.params.mu) << ',' << fmt17(r.energy)
            << ',' << fmt17(r.entropy) << ',' << fmt17(r.helmholtz) << ','
            << fmt17(r.pressure_volume) << ',' << fmt17(r.expected_links) << ','
            << fmt17(r.specific_heat) << ',' << to_string(r.convention) << '\n';
}

void write_batch_csv(const SampleBatch& batch, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "replicate,L,H,log_prob\n";
    for (const SampleRecord& r : batch.records)
        out << r.replicate << ',' << r.links << ',' << fmt17(r.energy) << ','
            << fmt17(r.log_probability) << '\n';
}

void write_trace_csv(const RelaxState& state, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "step,i,j,quantity,z_total\n";
    for (const Trade& t : state.trades)
        out << t.step << ',' << t.agent << ',' << t.counterpart << ',' << t.quantity << ','
            << t.aggregate_after << '\n';
}

void write_link_histogram_csv(const std::vector<std::uint64_t>& counts,
                              const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "L,count\n";
    for (std::size_t l = 0; l < counts.size(); ++l) out << l << ',' << counts[l] << '\n';
}

void write_spectrum_csv(const ProbabilitySpectrumSlice& slice, const SpectrumBinning& binning,
                        const std::filesystem::path& path) {
    auto out = open_out(path);
    const std::vector<double> edges = binning.edges();
    out << "bin_low,bin_high,n_graphs_analytic,n_graphs_empirical\n";
    out << 0 << ',' << fmt17(binning.floor) << ',' << slice.analytic_underflow << ','
        << slice.empirical_underflow << '\n';
    for (std::size_t b = 0; b + 1 < edges.size(); ++b)
        out << fmt17(edges[b]) << ',' << fmt17(edges[b + 1]) << ',' << slice.analytic_bins[b]
            << ',' << slice.empirical_bins[b] << '\n';
}

}  // namespace netens
