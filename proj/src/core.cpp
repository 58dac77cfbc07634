#include "netens/core.hpp"

#include <cmath>
#include <numeric>

namespace netens {

const char* to_string(Statistics s) {
    return s == Statistics::fermionic ? "fermionic" : "bosonic";
}

Statistics statistics_from_string(const std::string& name) {
    if (name == "fermionic") return Statistics::fermionic;
    if (name == "bosonic") return Statistics::bosonic;
    throw std::invalid_argument("unknown statistics: " + name);
}

void GraphSpec::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("GraphSpec: n_nodes must be >= 1");
}

std::int64_t GraphSpec::volume() const {
    const std::int64_t n = n_nodes;
    if (directed) return self_loops ? n * n : n * (n - 1);
    return self_loops ? n * (n + 1) / 2 : n * (n - 1) / 2;
}

bool GraphSpec::pair_admissible(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes) return false;
    if (i == j) return self_loops;
    return true;
}

std::int64_t GraphSpec::pair_index(int i, int j) const {
    if (!pair_admissible(i, j)) throw std::invalid_argument("pair_index: inadmissible pair");
    const std::int64_t n = n_nodes;
    if (directed) {
        if (self_loops) return i * n + j;
        return i * (n - 1) + j - (j > i ? 1 : 0);
    }
    if (i > j) std::swap(i, j);
    if (self_loops) return i * (2 * n - i + 1) / 2 + (j - i);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> GraphSpec::pair_at(std::int64_t index) const {
    if (index < 0 || index >= volume()) throw std::invalid_argument("pair_at: index out of range");
    const std::int64_t n = n_nodes;
    if (directed) {
        if (self_loops) return {static_cast<int>(index / n), static_cast<int>(index % n)};
        const int i = static_cast<int>(index / (n - 1));
        int j = static_cast<int>(index % (n - 1));
        if (j >= i) ++j;
        return {i, j};
    }
    // Row lengths decrease with i; walk rows (N is desk-scale).
    int i = 0;
    std::int64_t row_len = self_loops ? n : n - 1;
    while (index >= row_len) {
        index -= row_len;
        ++i;
        --row_len;
    }
    return {i, static_cast<int>(index + (self_loops ? i : i + 1))};
}

std::vector<std::pair<int, int>> admissible_pairs(const GraphSpec& spec) {
    spec.validate();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(spec.volume()));
    for_each_pair(spec, [&](int i, int j, std::int64_t) { pairs.emplace_back(i, j); });
    return pairs;
}

Configuration::Configuration(GraphSpec spec) : spec_(spec) {
    spec_.validate();
    occ_.assign(static_cast<std::size_t>(spec_.volume()), 0);
}

Configuration::Configuration(GraphSpec spec, std::vector<std::uint64_t> occupations)
    : spec_(spec), occ_(std::move(occupations)) {
    spec_.validate();
    if (occ_.size() != static_cast<std::size_t>(spec_.volume()))
        throw std::invalid_argument("Configuration: occupation vector length != volume");
    for (std::uint64_t v : occ_) check_value(v);
}

void Configuration::check_value(std::uint64_t value) const {
    if (spec_.statistics == Statistics::fermionic && value > 1)
        throw std::invalid_argument("Configuration: fermionic occupation must be 0 or 1");
}

std::uint64_t Configuration::occupation(int i, int j) const {
    return occ_[static_cast<std::size_t>(spec_.pair_index(i, j))];
}

void Configuration::set_occupation(int i, int j, std::uint64_t value) {
    check_value(value);
    occ_[static_cast<std::size_t>(spec_.pair_index(i, j))] = value;
}

void Configuration::set_occupation_at(std::int64_t index, std::uint64_t value) {
    check_value(value);
    occ_.at(static_cast<std::size_t>(index)) = value;
}

std::uint64_t Configuration::link_count() const {
    std::uint64_t total = 0;
    for (std::uint64_t v : occ_) total += v;
    return total;
}

void EnsembleParams::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("EnsembleParams: temperature must be positive and finite");
    if (!std::isfinite(mu)) throw std::invalid_argument("EnsembleParams: mu must be finite");
}

double EnsembleParams::fugacity() const { return std::exp(mu / temperature); }

void NodeTargets::validate() const {
    if (endowments.size() != allocations.size())
        throw std::invalid_argument("NodeTargets: endowment/allocation length mismatch");
    if (endowments.empty()) throw std::invalid_argument("NodeTargets: empty");
    double sum_omega = 0.0, sum_x = 0.0;
    for (double w : endowments) {
        if (!(w >= 0.0)) throw std::invalid_argument("NodeTargets: endowments must be nonnegative");
        sum_omega += w;
    }
    for (double x : allocations) {
        if (!(x >= 0.0)) throw std::invalid_argument("NodeTargets: allocations must be nonnegative");
        sum_x += x;
    }
    const double scale = std::max({1.0, sum_omega, sum_x});
    if (std::abs(sum_omega - sum_x) > 1e-9 * scale)
        throw ModelError("NodeTargets: total endowment != total allocation");
}

bool NodeTargets::integral() const {
    auto is_int = [](double v) { return v == std::floor(v); };
    for (double w : endowments)
        if (!is_int(w)) return false;
    for (double x : allocations)
        if (!is_int(x)) return false;
    return true;
}

std::vector<std::int64_t> NodeTargets::excess_demand() const {
    validate();
    if (!integral()) throw std::invalid_argument("NodeTargets: integer targets required");
    std::vector<std::int64_t> z(endowments.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = static_cast<std::int64_t>(allocations[i]) - static_cast<std::int64_t>(endowments[i]);
    return z;
}

}  // namespace netens
