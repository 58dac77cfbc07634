#include "netens/microcanonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netens/numeric.hpp"
#include "netens/rng.hpp"

namespace netens {

double EnergyHistogram::entropy_at(std::size_t bin) const {
    const std::uint64_t c = counts.at(bin);
    if (c == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(static_cast<double>(c));
}

std::uint64_t fixed_links_count(const GraphSpec& spec, std::uint64_t links,
                                std::uint64_t cap) {
    spec.validate();
    if (spec.statistics != Statistics::fermionic)
        throw std::invalid_argument("fixed-link enumeration requires a fermionic spec");
    const std::uint64_t volume = static_cast<std::uint64_t>(spec.volume());
    if (links > volume) throw std::invalid_argument("links exceed volume");
    const auto count = binomial_capped(volume, links, cap);
    if (!count)
        throw ResourceError("fixed-link enumeration exceeds cap of " + std::to_string(cap));
    return *count;
}

void enumerate_fixed_links(const GraphSpec& spec, std::uint64_t links,
                           const std::function<void(const Configuration&)>& visit,
                           std::uint64_t cap) {
    fixed_links_count(spec, links, cap);
    const std::int64_t volume = spec.volume();
    Configuration config(spec);
    if (links == 0) {
        visit(config);
        return;
    }
    const std::int64_t l = static_cast<std::int64_t>(links);
    std::vector<std::int64_t> chosen(static_cast<std::size_t>(l));
    for (std::int64_t k = 0; k < l; ++k) chosen[static_cast<std::size_t>(k)] = k;
    for (;;) {
        for (std::int64_t k : chosen) config.set_occupation_at(k, 1);
        visit(config);
        for (std::int64_t k : chosen) config.set_occupation_at(k, 0);
        // next combination in lexicographic order
        std::int64_t pos = l - 1;
        while (pos >= 0 && chosen[static_cast<std::size_t>(pos)] == volume - l + pos) --pos;
        if (pos < 0) break;
        ++chosen[static_cast<std::size_t>(pos)];
        for (std::int64_t k = pos + 1; k < l; ++k)
            chosen[static_cast<std::size_t>(k)] = chosen[static_cast<std::size_t>(k - 1)] + 1;
    }
}

EnergyHistogram fixed_links_energy_histogram(const GraphSpec& spec, std::uint64_t links,
                                             const EnergyLevels& levels,
                                             std::optional<double> bin_width,
                                             std::uint64_t cap) {
    if (spec != levels.spec())
        throw std::invalid_argument("fixed_links_energy_histogram: spec mismatch");
    if (bin_width && !(*bin_width > 0.0))
        throw std::invalid_argument("fixed_links_energy_histogram: bin_width must be > 0");

    // Pass 1: energy range.
    double e_min = std::numeric_limits<double>::infinity();
    double e_max = -std::numeric_limits<double>::infinity();
    enumerate_fixed_links(spec, links, [&](const Configuration& config) {
        const double e = energy(config, levels);
        e_min = std::min(e_min, e);
        e_max = std::max(e_max, e);
    }, cap);

    const double range = e_max - e_min;
    double width = bin_width ? *bin_width : range / 100.0;
    if (!(width > 0.0)) width = 1.0;  // degenerate spectrum
    const std::size_t n_bins =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(range / width - 1e-12)));

    EnergyHistogram hist;
    hist.bin_edges.resize(n_bins + 1);
    for (std::size_t b = 0; b <= n_bins; ++b)
        hist.bin_edges[b] = e_min + width * static_cast<double>(b);
    hist.counts.assign(n_bins, 0);

    enumerate_fixed_links(spec, links, [&](const Configuration& config) {
        const double e = energy(config, levels);
        std::size_t b = static_cast<std::size_t>((e - e_min) / width);
        if (b >= n_bins) b = n_bins - 1;  // right edge closed on the last bin
        ++hist.counts[b];
        ++hist.total;
    }, cap);
    return hist;
}

double fixed_links_log_partition(const EnergyLevels& levels, double temperature,
                                 std::uint64_t links, std::uint64_t cap) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("fixed_links_log_partition: temperature must be > 0");
    // log-sum-exp over the fixed-L energies, anchored at the minimum energy.
    double e_min = std::numeric_limits<double>::infinity();
    enumerate_fixed_links(levels.spec(), links, [&](const Configuration& config) {
        e_min = std::min(e_min, energy(config, levels));
    }, cap);
    KahanSum sum;
    enumerate_fixed_links(levels.spec(), links, [&](const Configuration& config) {
        sum.add(std::exp(-(energy(config, levels) - e_min) / temperature));
    }, cap);
    return -e_min / temperature + std::log(sum.value());
}

namespace {

struct TableEnumerator {
    int n = 0;
    std::vector<std::int64_t> row_target;
    std::vector<std::int64_t> col_rem;
    std::vector<std::int64_t> cells;  // row-major n*n
    std::uint64_t cap = 0;
    std::uint64_t count = 0;
    const std::function<void(const Configuration&)>* visit = nullptr;
    const GraphSpec* spec = nullptr;

    void run() {
        std::int64_t remaining = 0;
        for (std::int64_t w : row_target) remaining += w;
        fill_row(0, remaining);
    }

    void fill_row(int i, std::int64_t remaining_total) {
        if (i == n) {
            emit();
            return;
        }
        // A column needing more than all remaining rows can supply is a dead end.
        const std::int64_t after = remaining_total - row_target[static_cast<std::size_t>(i)];
        for (std::int64_t rem : col_rem)
            if (rem > remaining_total) return;
        fill_cell(i, 0, row_target[static_cast<std::size_t>(i)], after);
    }

    void fill_cell(int i, int j, std::int64_t row_rem, std::int64_t after_row_total) {
        if (j == n) {
            if (row_rem == 0) fill_row(i + 1, after_row_total);
            return;
        }
        std::int64_t suffix = 0;  // capacity of the columns right of j
        for (int k = j + 1; k < n; ++k) suffix += col_rem[static_cast<std::size_t>(k)];
        const std::int64_t lo = std::max<std::int64_t>(0, row_rem - suffix);
        const std::int64_t hi = std::min(row_rem, col_rem[static_cast<std::size_t>(j)]);
        for (std::int64_t v = lo; v <= hi; ++v) {
            cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(j)] = v;
            col_rem[static_cast<std::size_t>(j)] -= v;
            fill_cell(i, j + 1, row_rem - v, after_row_total);
            col_rem[static_cast<std::size_t>(j)] += v;
        }
    }

    void emit() {
        if (++count > cap)
            throw ResourceError("market-table enumeration exceeds cap of " + std::to_string(cap));
        if (!visit) return;
        Configuration config(*spec);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                config.set_occupation(i, j,
                                      static_cast<std::uint64_t>(
                                          cells[static_cast<std::size_t>(i) *
                                                    static_cast<std::size_t>(n) +
                                                static_cast<std::size_t>(j)]));
        (*visit)(config);
    }
};

GraphSpec market_spec(const NodeTargets& targets) {
    return GraphSpec{targets.n(), true, true, Statistics::bosonic};
}

TableEnumerator make_enumerator(const NodeTargets& targets, std::uint64_t cap) {
    targets.validate();
    if (!targets.integral())
        throw ModelError("market tables need integer margins");
    TableEnumerator e;
    e.n = targets.n();
    e.row_target.resize(static_cast<std::size_t>(e.n));
    e.col_rem.resize(static_cast<std::size_t>(e.n));
    for (int i = 0; i < e.n; ++i) {
        e.row_target[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(targets.endowments[static_cast<std::size_t>(i)]);
        e.col_rem[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(targets.allocations[static_cast<std::size_t>(i)]);
    }
    e.cells.assign(static_cast<std::size_t>(e.n) * static_cast<std::size_t>(e.n), 0);
    e.cap = cap;
    return e;
}

}  // namespace

std::uint64_t market_table_count(const NodeTargets& targets, std::uint64_t cap) {
    TableEnumerator e = make_enumerator(targets, cap);
    e.run();
    return e.count;
}

void enumerate_market_tables(const NodeTargets& targets,
                             const std::function<void(const Configuration&)>& visit,
                             std::uint64_t cap) {
    TableEnumerator e = make_enumerator(targets, cap);
    const GraphSpec spec = market_spec(targets);
    e.spec = &spec;
    e.visit = &visit;
    e.run();
}

Configuration sample_market_table(const NodeTargets& targets, std::uint64_t seed,
                                  std::uint64_t draw_index, std::uint64_t cap) {
    const std::uint64_t count = market_table_count(targets, cap);
    const std::uint64_t pick = rng::below(seed, draw_index, 0, count);
    Configuration result(market_spec(targets));
    std::uint64_t index = 0;
    bool found = false;
    enumerate_market_tables(targets, [&](const Configuration& config) {
        if (index++ == pick) {
            result = config;
            found = true;
        }
    }, cap);
    if (!found) throw std::logic_error("sample_market_table: enumeration shrank");
    return result;
}

}  // namespace netens
