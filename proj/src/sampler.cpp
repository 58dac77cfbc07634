#include "netens/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "netens/numeric.hpp"
#include "netens/rng.hpp"

namespace netens {

Configuration sample_configuration(const EnergyLevels& levels, const EnsembleParams& params,
                                   std::uint64_t seed, std::uint64_t replicate) {
    params.validate();
    const GraphSpec& spec = levels.spec();
    const bool fermionic = spec.statistics == Statistics::fermionic;
    if (!fermionic && params.mu >= levels.min_value())
        throw ModelError("bosonic sampling diverges: mu >= min epsilon");

    Configuration config(spec);
    const auto& eps = levels.values();
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double x = (params.mu - eps[k]) / params.temperature;
        const double u = rng::uniform(seed, replicate, static_cast<std::uint64_t>(k));
        if (fermionic) {
            config.set_occupation_at(static_cast<std::int64_t>(k), u < logistic(x) ? 1 : 0);
        } else {
            // geometric on {0,1,...} with ratio q = e^x < 1, by inversion
            const double draw = std::floor(std::log1p(-u) / x);
            if (!(draw <= static_cast<double>(kOccupationCap)))
                throw ResourceError("bosonic draw exceeds per-link cap; mu too close to min epsilon");
            config.set_occupation_at(static_cast<std::int64_t>(k),
                                     static_cast<std::uint64_t>(draw));
        }
    }
    return config;
}

unsigned worker_count(unsigned requested) {
    unsigned workers = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NETENSEMBLE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return std::max(1u, workers);
}

SampleBatch sample_batch(const EnergyLevels& levels, const EnsembleParams& params,
                         std::uint64_t seed, std::uint64_t n_samples, unsigned n_threads) {
    params.validate();
    SampleBatch batch{levels.spec(), levels, params, seed, n_samples, {}};
    batch.records.resize(n_samples);
    const double log_q = log_grand_partition(levels, params);

    auto fill = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
            const Configuration config = sample_configuration(levels, params, seed, r);
            SampleRecord& record = batch.records[r];
            record.replicate = r;
            record.links = config.link_count();
            record.energy = energy(config, levels);
            record.log_probability =
                (params.mu * static_cast<double>(record.links) - record.energy) /
                    params.temperature -
                log_q;
            if (r % 100 == 0) {
                const double check = graph_log_probability(config, levels, params);
                if (!(std::abs(check - record.log_probability) <= 1e-9 * (1.0 + std::abs(check))))
                    throw std::logic_error("sample_batch: record log-probability spot check failed");
            }
        }
    };

    unsigned workers = worker_count(n_threads);
    if (n_samples < 4096) workers = 1;
    if (workers <= 1) {
        fill(0, n_samples);
        return batch;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n_samples + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(n_samples, w * chunk);
        const std::uint64_t end = std::min<std::uint64_t>(n_samples, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                fill(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return batch;
}

ZeroTemperatureLimit limit_zero_temperature(const EnergyLevels& levels, double mu) {
    if (levels.min_value() != levels.max_value())
        throw std::invalid_argument("limit_zero_temperature: constant levels required");
    const double eps = levels.min_value();
    if (mu == eps) throw ModelError("limit_zero_temperature: mu = epsilon is degenerate");
    const GraphSpec& spec = levels.spec();
    Configuration config(spec);
    if (mu > eps) {
        if (spec.statistics == Statistics::bosonic)
            throw ModelError("bosonic ensemble has no mu > epsilon limit (condensation)");
        for (std::int64_t k = 0; k < spec.volume(); ++k) config.set_occupation_at(k, 1);
        return {std::move(config), 1.0,
                "complete graph: every admissible link occupied with probability 1"};
    }
    return {std::move(config), 1.0, "empty graph: every link vacant with probability 1"};
}

double uniform_limit_probability(const GraphSpec& spec) {
    spec.validate();
    if (spec.statistics != Statistics::fermionic)
        throw std::invalid_argument("uniform limit requires a fermionic spec");
    const std::int64_t volume = spec.volume();
    if (volume > 1074) return 0.0;  // below double underflow
    return std::ldexp(1.0, -static_cast<int>(volume));
}

namespace {

ChiSquareFit binomial_gof(const std::vector<std::uint64_t>& counts, std::uint64_t n_samples,
                          double p) {
    const std::uint64_t v = counts.size() - 1;
    std::vector<double> expected(counts.size());
    for (std::uint64_t l = 0; l <= v; ++l)
        expected[l] = static_cast<double>(n_samples) * binomial_pmf(v, l, p);

    // Merge adjacent cells until each expected count is at least 5.
    std::vector<double> exp_merged;
    std::vector<double> obs_merged;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
        e_acc += expected[l];
        o_acc += static_cast<double>(counts[l]);
        if (e_acc >= 5.0) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_merged.empty()) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
        } else {
            exp_merged.back() += e_acc;
            obs_merged.back() += o_acc;
        }
    }

    ChiSquareFit fit;
    for (std::size_t b = 0; b < exp_merged.size(); ++b) {
        const double d = obs_merged[b] - exp_merged[b];
        fit.statistic += d * d / exp_merged[b];
    }
    fit.dof = static_cast<int>(exp_merged.size()) - 1;
    fit.p_value = fit.dof > 0 ? chi_square_sf(fit.statistic, fit.dof) : 1.0;
    return fit;
}

std::string graph_key(const Configuration& config) {
    const auto& occ = config.occupations();
    if (config.spec().statistics == Statistics::fermionic) {
        std::string key((occ.size() + 7) / 8, '\0');
        for (std::size_t k = 0; k < occ.size(); ++k)
            if (occ[k]) key[k / 8] = static_cast<char>(key[k / 8] | (1 << (k % 8)));
        return key;
    }
    std::string key(occ.size() * 8, '\0');
    for (std::size_t k = 0; k < occ.size(); ++k)
        for (int b = 0; b < 8; ++b)
            key[8 * k + static_cast<std::size_t>(b)] =
                static_cast<char>((occ[k] >> (8 * b)) & 0xff);
    return key;
}

}  // namespace

EnergyDistributionResult run_energy_distribution(const EnergyLevels& levels, double mu,
                                                 double temperature, std::uint64_t n_samples,
                                                 std::uint64_t seed,
                                                 std::size_t energy_bins) {
    const GraphSpec& spec = levels.spec();
    if (spec.statistics != Statistics::fermionic)
        throw std::invalid_argument("energy distribution experiment requires a fermionic spec");
    const EnsembleParams ensemble{temperature, mu};
    const SampleBatch batch = sample_batch(levels, ensemble, seed, n_samples);

    EnergyDistributionResult result;
    result.spec = spec;
    const std::size_t volume = static_cast<std::size_t>(spec.volume());
    result.link_histogram.assign(volume + 1, 0);

    double e_min = std::numeric_limits<double>::infinity();
    double e_max = -std::numeric_limits<double>::infinity();
    KahanSum e_sum, l_sum;
    for (const SampleRecord& record : batch.records) {
        e_min = std::min(e_min, record.energy);
        e_max = std::max(e_max, record.energy);
        e_sum.add(record.energy);
        l_sum.add(static_cast<double>(record.links));
        ++result.link_histogram[record.links];
    }
    result.mean_energy = e_sum.value() / static_cast<double>(n_samples);
    result.mean_links = l_sum.value() / static_cast<double>(n_samples);

    const std::size_t n_bins = std::max<std::size_t>(1, energy_bins);
    double width = (e_max - e_min) / static_cast<double>(n_bins);
    if (!(width > 0.0)) width = 1.0;
    result.energy_histogram.bin_edges.resize(n_bins + 1);
    for (std::size_t b = 0; b <= n_bins; ++b)
        result.energy_histogram.bin_edges[b] = e_min + width * static_cast<double>(b);
    result.energy_histogram.counts.assign(n_bins, 0);
    for (const SampleRecord& record : batch.records) {
        std::size_t b = static_cast<std::size_t>((record.energy - e_min) / width);
        if (b >= n_bins) b = n_bins - 1;
        ++result.energy_histogram.counts[b];
        ++result.energy_histogram.total;
    }

    KahanSum p_sum;
    for (double eps : levels.values())
        p_sum.add(expected_occupation(eps, ensemble, Statistics::fermionic));
    result.mean_occupation = p_sum.value() / static_cast<double>(volume);
    result.link_gof = binomial_gof(result.link_histogram, n_samples, result.mean_occupation);
    return result;
}

EnergyDistributionResult run_energy_distribution(const EnergyDistributionParams& params) {
    const GraphSpec spec{params.n_nodes, false, false, Statistics::fermionic};
    spec.validate();
    const EnergyLevels levels(
        spec, GaussianLevels{params.level_mean, params.level_sd, params.level_seed});
    return run_energy_distribution(levels, params.mu, params.temperature, params.n_samples,
                                   params.sample_seed, params.energy_bins);
}

std::vector<double> SpectrumBinning::edges() const {
    // floor * 10^(k / bins_per_decade) up to 1
    const int decades = static_cast<int>(std::ceil(-std::log10(floor)));
    const int n = decades * bins_per_decade;
    std::vector<double> e(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        e[static_cast<std::size_t>(k)] =
            floor * std::pow(10.0, static_cast<double>(k) / bins_per_decade);
    e.back() = 1.0;
    return e;
}

ProbabilitySpectrumResult run_probability_spectrum(const EnergyLevels& levels, double mu,
                                                   const std::vector<double>& temperatures,
                                                   std::uint64_t n_samples,
                                                   std::uint64_t seed) {
    const GraphSpec& spec = levels.spec();
    if (spec.statistics != Statistics::fermionic)
        throw std::invalid_argument("probability spectrum experiment requires a fermionic spec");

    ProbabilitySpectrumResult result;
    result.params.n_nodes = spec.n_nodes;
    result.params.mu = mu;
    result.params.temperatures = temperatures;
    result.params.n_samples = n_samples;
    result.params.sample_seed = seed;
    const std::vector<double> edges = result.binning.edges();
    const double uniform = uniform_limit_probability(spec);

    auto bin_of = [&](double p) -> std::ptrdiff_t {
        if (p < result.binning.floor) return -1;  // underflow bucket
        const auto it = std::upper_bound(edges.begin(), edges.end(), p);
        const std::ptrdiff_t b = std::distance(edges.begin(), it) - 1;
        return std::min<std::ptrdiff_t>(b, static_cast<std::ptrdiff_t>(edges.size()) - 2);
    };

    for (double t : temperatures) {
        const EnsembleParams ensemble{t, mu};
        const SampleBatch batch = sample_batch(levels, ensemble, seed, n_samples);

        // Distinct sampled graphs keyed by their labeled occupation matrix.
        struct Entry {
            std::uint64_t count = 0;
            double log_probability = 0.0;
        };
        std::unordered_map<std::string, Entry> distinct;
        distinct.reserve(batch.records.size());
        for (std::uint64_t r = 0; r < n_samples; ++r) {
            const Configuration config = sample_configuration(levels, ensemble, seed, r);
            Entry& entry = distinct[graph_key(config)];
            ++entry.count;
            entry.log_probability = batch.records[r].log_probability;
        }

        ProbabilitySpectrumSlice slice;
        slice.temperature = t;
        slice.n_samples = n_samples;
        slice.n_distinct = distinct.size();
        slice.analytic_bins.assign(edges.size() - 1, 0);
        slice.empirical_bins.assign(edges.size() - 1, 0);

        std::uint64_t singletons = 0, below_1e3 = 0, near_uniform = 0;
        const double band = std::log(1.5);
        const double log_uniform = std::log(uniform);
        for (const auto& [key, entry] : distinct) {
            const double p = std::exp(entry.log_probability);
            const double frequency =
                static_cast<double>(entry.count) / static_cast<double>(n_samples);
            const std::ptrdiff_t pb = bin_of(p);
            if (pb < 0)
                ++slice.analytic_underflow;
            else
                ++slice.analytic_bins[static_cast<std::size_t>(pb)];
            const std::ptrdiff_t fb = bin_of(frequency);
            if (fb < 0)
                ++slice.empirical_underflow;
            else
                ++slice.empirical_bins[static_cast<std::size_t>(fb)];

            if (entry.count == 1) ++singletons;
            if (p < 1e-3) ++below_1e3;
            if (std::abs(entry.log_probability - log_uniform) <= band) ++near_uniform;
            if (entry.count > slice.top_count ||
                (entry.count == slice.top_count && p > slice.top_probability)) {
                slice.top_count = entry.count;
                slice.top_probability = p;
            }
        }
        const double n_distinct = static_cast<double>(slice.n_distinct);
        slice.singleton_fraction = static_cast<double>(singletons) / n_distinct;
        slice.fraction_below_1e3 = static_cast<double>(below_1e3) / n_distinct;
        slice.fraction_near_uniform = static_cast<double>(near_uniform) / n_distinct;
        result.slices.push_back(std::move(slice));
    }
    return result;
}

ProbabilitySpectrumResult run_probability_spectrum(const ProbabilitySpectrumParams& params) {
    const GraphSpec spec{params.n_nodes, false, false, Statistics::fermionic};
    spec.validate();
    const EnergyLevels levels(
        spec, GaussianLevels{params.level_mean, params.level_sd, params.level_seed});
    ProbabilitySpectrumResult result = run_probability_spectrum(
        levels, params.mu, params.temperatures, params.n_samples, params.sample_seed);
    result.params = params;
    return result;
}

}  // namespace netens
