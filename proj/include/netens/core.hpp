#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netens {

/// Ill-posed model: divergent ensemble, infeasible targets, degenerate limit.
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration or sampling exceeded a configured cap.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

enum class Statistics { fermionic, bosonic };

const char* to_string(Statistics s);
Statistics statistics_from_string(const std::string& name);

/// Ensemble geometry: node count, directedness, self-loop policy and link
/// statistics. The volume V is the number of admissible node pairs.
struct GraphSpec {
    int n_nodes = 1;
    bool directed = false;
    bool self_loops = false;
    Statistics statistics = Statistics::fermionic;

    void validate() const;

    /// Number of admissible pairs: N(N-1) directed, N(N-1)/2 undirected,
    /// N^2 directed with self-loops, N(N+1)/2 undirected with self-loops.
    std::int64_t volume() const;

    bool pair_admissible(int i, int j) const;

    /// Canonical (row-major) index of an admissible pair. Undirected pairs
    /// are normalized to i <= j first.
    std::int64_t pair_index(int i, int j) const;

    /// Inverse of pair_index.
    std::pair<int, int> pair_at(std::int64_t index) const;

    bool operator==(const GraphSpec&) const = default;
};

/// Admissible pairs in canonical order; length equals volume().
std::vector<std::pair<int, int>> admissible_pairs(const GraphSpec& spec);

/// Visits every admissible pair in canonical order as f(i, j, index).
template <typename F>
void for_each_pair(const GraphSpec& spec, F&& f) {
    const int n = spec.n_nodes;
    std::int64_t index = 0;
    if (spec.directed) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j && !spec.self_loops) continue;
                f(i, j, index++);
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = spec.self_loops ? i : i + 1; j < n; ++j) {
                f(i, j, index++);
            }
        }
    }
}

/// One market/graph state: the occupation of every admissible pair, stored
/// in canonical pair order (undirected pairs stored once). Fermionic
/// occupations are restricted to {0,1}; bosonic ones are nonnegative
/// integers. Immutable value semantics: copies are cheap to share across
/// workers.
class Configuration {
public:
    explicit Configuration(GraphSpec spec);
    Configuration(GraphSpec spec, std::vector<std::uint64_t> occupations);

    const GraphSpec& spec() const { return spec_; }
    const std::vector<std::uint64_t>& occupations() const { return occ_; }

    std::uint64_t occupation(int i, int j) const;
    void set_occupation(int i, int j, std::uint64_t value);
    void set_occupation_at(std::int64_t index, std::uint64_t value);

    /// Total number of links (commodity units), L.
    std::uint64_t link_count() const;

    bool operator==(const Configuration&) const = default;

private:
    void check_value(std::uint64_t value) const;

    GraphSpec spec_;
    std::vector<std::uint64_t> occ_;
};

/// Temperature and chemical potential of a parameterized ensemble.
/// Temperature must be strictly positive; the T->0 and T->infinity limits
/// are handled by dedicated limit operations.
struct EnsembleParams {
    double temperature = 1.0;
    double mu = 0.0;

    void validate() const;
    double beta() const { return 1.0 / temperature; }
    double fugacity() const;
};

/// Per-agent endowments (omega) and target allocations (x*). Conservation of
/// the traded commodity requires equal totals, i.e. sum of excess demands
/// x*_i - omega_i is zero.
struct NodeTargets {
    std::vector<double> endowments;
    std::vector<double> allocations;

    int n() const { return static_cast<int>(endowments.size()); }
    void validate() const;
    bool integral() const;

    /// z_i = x*_i - omega_i for integer targets.
    std::vector<std::int64_t> excess_demand() const;
};

}  // namespace netens
