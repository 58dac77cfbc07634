// netensemble — statistical graph ensembles as market configurations.
//
// Subcommands: sample, thermo, fit, enumerate, relax, limits, experiment.
// Every file-writing run also writes a manifest (parameters, seeds, SHA-256
// digests of all outputs); re-running the same command reproduces the files
// byte for byte.
//
// Exit codes: 0 ok, 2 usage error, 3 infeasible model, 4 cap exceeded.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netens/analytic.hpp"
#include "netens/core.hpp"
#include "netens/csv.hpp"
#include "netens/fit.hpp"
#include "netens/hamiltonian.hpp"
#include "netens/json_io.hpp"
#include "netens/manifest.hpp"
#include "netens/microcanonical.hpp"
#include "netens/relaxation.hpp"
#include "netens/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netens;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;
constexpr int kExitResource = 4;

std::string format_number(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", v);
    std::string s = buffer;
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '+') c = '_';
        if (c == '-') c = 'm';
    }
    std::erase(s, '_');
    return s;
}

// Collects written files and emits the manifest at the end of a run.
class RunRecorder {
public:
    RunRecorder(std::string command, json parameters)
        : command_(std::move(command)), parameters_(std::move(parameters)) {}

    void add(const fs::path& path) { outputs_.push_back(path); }

    void finish(const fs::path& manifest_path) {
        ExperimentManifest manifest;
        manifest.command = command_;
        manifest.parameters = parameters_;
        const fs::path base = manifest_path.parent_path();
        for (const fs::path& p : outputs_) {
            const fs::path rel = p.lexically_proximate(base.empty() ? fs::path(".") : base);
            manifest.outputs.push_back({rel.generic_string(), sha256_file(p)});
        }
        write_manifest(manifest, manifest_path);
    }

private:
    std::string command_;
    json parameters_;
    std::vector<fs::path> outputs_;
};

struct LevelsInput {
    std::string spec_path;
    std::string levels_path;      // generator JSON or full levels JSON
    std::string levels_csv_path;  // explicit matrix, requires --spec
    std::optional<double> constant_eps;

    void add_options(CLI::App* app, bool spec_required) {
        auto* spec_opt = app->add_option("--spec", spec_path, "graph spec JSON file");
        if (spec_required) spec_opt->required();
        app->add_option("--levels", levels_path,
                        "level generator JSON ({\"kind\":...}) or full levels JSON "
                        "({\"spec\":...,\"generator\":...})");
        app->add_option("--levels-csv", levels_csv_path, "explicit i,j,epsilon CSV");
        app->add_option("--eps", constant_eps, "constant level shorthand");
    }

    json describe() const {
        json j;
        if (!spec_path.empty()) j["spec"] = spec_path;
        if (!levels_path.empty()) j["levels"] = levels_path;
        if (!levels_csv_path.empty()) j["levels_csv"] = levels_csv_path;
        if (constant_eps) j["eps"] = *constant_eps;
        return j;
    }

    EnergyLevels resolve() const {
        std::optional<GraphSpec> spec;
        if (!spec_path.empty()) spec = spec_from_json(load_json(spec_path));
        if (!levels_path.empty()) {
            const json j = load_json(levels_path);
            if (j.contains("spec")) {
                EnergyLevels levels = levels_from_json(j);
                if (spec && !(levels.spec() == *spec))
                    throw std::invalid_argument("--spec disagrees with the spec in --levels");
                return levels;
            }
            if (!spec) throw std::invalid_argument("generator JSON needs --spec");
            return EnergyLevels(*spec, generator_from_json(j, nullptr));
        }
        if (!levels_csv_path.empty()) {
            if (!spec) throw std::invalid_argument("--levels-csv needs --spec");
            return read_levels_csv(*spec, levels_csv_path);
        }
        if (constant_eps) {
            if (!spec) throw std::invalid_argument("--eps needs --spec");
            return EnergyLevels(*spec, ConstantLevels{*constant_eps});
        }
        throw std::invalid_argument("no levels given: use --levels, --levels-csv or --eps");
    }
};

// Fixed layout: 640x400, 70/20/40/50 margins, linear count axis, axis
// extremes labeled with the first/last bin edge.
void write_bars_svg(const std::vector<double>& edges, const std::vector<std::uint64_t>& counts,
                    const std::string& title, const fs::path& path) {
    const double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    std::uint64_t max_count = 1;
    for (std::uint64_t c : counts) max_count = std::max(max_count, c);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    const std::size_t n = counts.size();
    for (std::size_t b = 0; b < n; ++b) {
        const double h = plot_h * static_cast<double>(counts[b]) /
                         static_cast<double>(max_count);
        const double x = left + plot_w * static_cast<double>(b) / static_cast<double>(n);
        char rect[256];
        std::snprintf(rect, sizeof(rect),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"#4878a8\"/>\n",
                      x, top + plot_h - h, plot_w / static_cast<double>(n), h);
        out << rect;
    }
    char label[256];
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%.6g</text>\n", left,
                  height - 20.0, edges.front());
    out << label;
    std::snprintf(label, sizeof(label),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"12\">%.6g</text>\n",
                  left + plot_w, height - 20.0, edges.back());
    out << label;
    std::snprintf(label, sizeof(label),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"12\">%llu</text>\n",
                  left - 6.0, top + 6.0, static_cast<unsigned long long>(max_count));
    out << label;
    out << "</svg>\n";
}

void write_histogram_svg_file(const EnergyHistogram& hist, const std::string& title,
                              const fs::path& path) {
    write_bars_svg(hist.bin_edges, hist.counts, title, path);
}

int run_sample(const LevelsInput& input, double mu, double t, std::uint64_t n,
               std::uint64_t seed, unsigned threads, const std::string& out_path) {
    const EnergyLevels levels = input.resolve();
    const EnsembleParams params{t, mu};
    const SampleBatch batch = sample_batch(levels, params, seed, n, threads);
    write_batch_csv(batch, out_path);

    json parameters = input.describe();
    parameters["mu"] = mu;
    parameters["T"] = t;
    parameters["n"] = n;
    parameters["seed"] = seed;
    RunRecorder recorder("sample", parameters);
    recorder.add(out_path);
    recorder.finish(out_path + ".manifest.json");

    double links = 0;
    for (const SampleRecord& r : batch.records) links += static_cast<double>(r.links);
    std::cout << "sampled " << n << " replicates; mean L = "
              << links / static_cast<double>(n) << "\n";
    return 0;
}

int run_thermo(const LevelsInput& input, double mu, const std::vector<double>& temperatures,
               bool fixed_mu, std::optional<double> target_links,
               const std::string& out_path) {
    const EnergyLevels levels = input.resolve();
    std::vector<ThermoReport> reports;
    for (double t : temperatures) {
        const EnsembleParams params{t, mu};
        reports.push_back(thermo_report(
            levels, params, fixed_mu ? CvConvention::fixed_mu : CvConvention::fixed_links,
            target_links));
    }
    if (out_path.empty()) {
        std::cout << "T,mu,E,S,F,PV,L_bar,C_V,convention\n";
        for (const ThermoReport& r : reports) {
            char line[512];
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                          r.params.temperature, r.params.mu, r.energy, r.entropy, r.helmholtz,
                          r.pressure_volume, r.expected_links, r.specific_heat,
                          to_string(r.convention));
            std::cout << line;
        }
        return 0;
    }
    write_thermo_csv(reports, out_path);
    json parameters = input.describe();
    parameters["mu"] = mu;
    parameters["T"] = temperatures;
    parameters["convention"] = fixed_mu ? "fixed_mu" : "fixed_L";
    if (target_links) parameters["target_L"] = *target_links;
    RunRecorder recorder("thermo", parameters);
    recorder.add(out_path);
    recorder.finish(out_path + ".manifest.json");
    return 0;
}

int run_fit(const std::string& targets_path, double t, const std::string& statistics,
            bool self_loops, const std::string& out_path) {
    const NodeTargets targets = read_targets_csv(targets_path);
    const GraphSpec spec{targets.n(), true, self_loops, statistics_from_string(statistics)};
    const FitResult result = fit_strengths(targets, spec, t);
    std::cout << "residual " << result.residual_norm << " after " << result.iterations
              << " iterations; max strength CV " << result.max_strength_cv << "\n";
    if (!result.converged) {
        std::cerr << "error[model]: fit did not converge\n";
        return kExitModel;
    }
    save_json(levels_to_json(result.levels), out_path);
    json parameters{{"targets", targets_path},
                    {"T", t},
                    {"statistics", statistics},
                    {"self_loops", self_loops}};
    RunRecorder recorder("fit", parameters);
    recorder.add(out_path);
    recorder.finish(out_path + ".manifest.json");
    return 0;
}

int run_enumerate_fixed(const LevelsInput& input, std::uint64_t links,
                        std::optional<double> bin_width, std::uint64_t cap, bool svg,
                        const std::string& out_path) {
    const EnergyLevels levels = input.resolve();
    const EnergyHistogram hist =
        fixed_links_energy_histogram(levels.spec(), links, levels, bin_width, cap);
    write_histogram_csv(hist, out_path);
    json parameters = input.describe();
    parameters["mode"] = "fixed_links";
    parameters["L"] = links;
    parameters["cap"] = cap;
    if (bin_width) parameters["bin_width"] = *bin_width;
    RunRecorder recorder("enumerate", parameters);
    recorder.add(out_path);
    if (svg) {
        const fs::path svg_path = fs::path(out_path).replace_extension(".svg");
        write_histogram_svg_file(hist, "configurations per energy bin", svg_path);
        recorder.add(svg_path);
    }
    recorder.finish(out_path + ".manifest.json");
    std::cout << "enumerated " << hist.total << " configurations\n";
    return 0;
}

int run_enumerate_market(const std::string& targets_path, std::uint64_t cap, bool draw_sample,
                         std::uint64_t seed, const std::string& out_path) {
    const NodeTargets targets = read_targets_csv(targets_path);
    const std::uint64_t count = market_table_count(targets, cap);
    std::cout << "market configurations consistent with the margins: " << count << "\n";
    if (out_path.empty()) return 0;

    json parameters{{"targets", targets_path}, {"mode", "market"}, {"cap", cap}};
    if (draw_sample) {
        parameters["seed"] = seed;
        write_configuration_csv(sample_market_table(targets, seed, 0, cap), out_path);
    } else {
        std::ofstream out(out_path);
        out << "count\n" << count << "\n";
    }
    RunRecorder recorder("enumerate", parameters);
    recorder.add(out_path);
    recorder.finish(out_path + ".manifest.json");
    return 0;
}

int run_relax(const std::string& targets_path, const std::string& out_path,
              const std::string& allocation_path) {
    const NodeTargets targets = read_targets_csv(targets_path);
    const RelaxState state = relax_to_rest(targets);
    write_trace_csv(state, out_path);
    json parameters{{"targets", targets_path}};
    RunRecorder recorder("relax", parameters);
    recorder.add(out_path);
    if (!allocation_path.empty()) {
        write_configuration_csv(state.allocation, allocation_path);
        recorder.add(allocation_path);
    }
    recorder.finish(out_path + ".manifest.json");
    std::cout << "rest state after " << state.trades.size() << " trades; residual excess "
              << state.aggregate_excess() << "\n";
    return 0;
}

int run_limits(const std::string& spec_path, double mu, double eps) {
    const GraphSpec spec = spec_from_json(load_json(spec_path));
    const EnergyLevels levels(spec, ConstantLevels{eps});
    const ZeroTemperatureLimit limit = limit_zero_temperature(levels, mu);
    std::cout << "T->0 limit (mu = " << mu << ", eps = " << eps << "): " << limit.description
              << " [L = " << limit.configuration.link_count() << "]\n";
    if (spec.statistics == Statistics::fermionic) {
        char line[128];
        std::snprintf(line, sizeof(line),
                      "T->inf limit: every graph has probability 2^-%lld = %.17g\n",
                      static_cast<long long>(spec.volume()), uniform_limit_probability(spec));
        std::cout << line;
    }
    return 0;
}

int run_experiment(const std::string& name, const fs::path& outdir, bool svg,
                   std::optional<int> n_nodes, std::optional<double> mu,
                   std::vector<double> t_list, std::optional<std::uint64_t> n_samples,
                   std::optional<std::uint64_t> seed, std::optional<std::uint64_t> level_seed,
                   std::optional<double> level_mean, std::optional<double> level_sd) {
    fs::create_directories(outdir);
    if (name == "energy_distribution") {
        EnergyDistributionParams params;
        if (n_nodes) params.n_nodes = *n_nodes;
        if (mu) params.mu = *mu;
        if (!t_list.empty()) params.temperature = t_list.front();
        if (n_samples) params.n_samples = *n_samples;
        if (seed) params.sample_seed = *seed;
        if (level_seed) params.level_seed = *level_seed;
        if (level_mean) params.level_mean = *level_mean;
        if (level_sd) params.level_sd = *level_sd;

        const EnergyDistributionResult result = run_energy_distribution(params);
        const fs::path energy_csv = outdir / "energy_hist.csv";
        const fs::path link_csv = outdir / "link_hist.csv";
        write_histogram_csv(result.energy_histogram, energy_csv);
        write_link_histogram_csv(result.link_histogram, link_csv);

        json summary{{"mean_energy", result.mean_energy},
                     {"mean_links", result.mean_links},
                     {"mean_occupation", result.mean_occupation},
                     {"chi_square", result.link_gof.statistic},
                     {"chi_square_dof", result.link_gof.dof},
                     {"chi_square_p", result.link_gof.p_value}};
        const fs::path summary_path = outdir / "summary.json";
        save_json(summary, summary_path);

        json parameters{{"name", name},           {"N", params.n_nodes},
                        {"mu", params.mu},        {"T", params.temperature},
                        {"n", params.n_samples},  {"seed", params.sample_seed},
                        {"level_seed", params.level_seed}, {"level_mean", params.level_mean},
                        {"level_sd", params.level_sd}};
        RunRecorder recorder("experiment", parameters);
        recorder.add(energy_csv);
        recorder.add(link_csv);
        recorder.add(summary_path);
        if (svg) {
            const fs::path svg_path = outdir / "energy_hist.svg";
            write_histogram_svg_file(result.energy_histogram, "sampled energies", svg_path);
            recorder.add(svg_path);
        }
        recorder.finish(outdir / "manifest.json");
        std::cout << "energy distribution written to " << outdir << " (chi-square p = "
                  << result.link_gof.p_value << ")\n";
        return 0;
    }
    if (name == "probability_spectrum") {
        ProbabilitySpectrumParams params;
        if (n_nodes) params.n_nodes = *n_nodes;
        if (mu) params.mu = *mu;
        if (!t_list.empty()) params.temperatures = t_list;
        if (n_samples) params.n_samples = *n_samples;
        if (seed) params.sample_seed = *seed;
        if (level_seed) params.level_seed = *level_seed;
        if (level_mean) params.level_mean = *level_mean;
        if (level_sd) params.level_sd = *level_sd;

        const ProbabilitySpectrumResult result = run_probability_spectrum(params);
        json parameters{{"name", name},          {"N", params.n_nodes},
                        {"mu", params.mu},       {"T", params.temperatures},
                        {"n", params.n_samples}, {"seed", params.sample_seed},
                        {"level_seed", params.level_seed}, {"level_mean", params.level_mean},
                        {"level_sd", params.level_sd}};
        RunRecorder recorder("experiment", parameters);

        json summary = json::array();
        for (const ProbabilitySpectrumSlice& slice : result.slices) {
            const fs::path csv_path =
                outdir / ("spectrum_T" + format_number(slice.temperature) + ".csv");
            write_spectrum_csv(slice, result.binning, csv_path);
            recorder.add(csv_path);
            if (svg) {
                const fs::path svg_path =
                    outdir / ("spectrum_T" + format_number(slice.temperature) + ".svg");
                write_bars_svg(result.binning.edges(), slice.empirical_bins,
                               "distinct graphs per empirical-frequency bin", svg_path);
                recorder.add(svg_path);
            }
            summary.push_back({{"T", slice.temperature},
                               {"n_distinct", slice.n_distinct},
                               {"top_count", slice.top_count},
                               {"top_probability", slice.top_probability},
                               {"singleton_fraction", slice.singleton_fraction},
                               {"fraction_below_1e-3", slice.fraction_below_1e3},
                               {"fraction_near_uniform", slice.fraction_near_uniform}});
        }
        const fs::path summary_path = outdir / "summary.json";
        save_json(summary, summary_path);
        recorder.add(summary_path);
        recorder.finish(outdir / "manifest.json");
        std::cout << "probability spectrum written to " << outdir << " ("
                  << result.slices.size() << " temperatures)\n";
        return 0;
    }
    throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical graph ensembles as market configurations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    // sample
    auto* sample = app.add_subcommand("sample", "draw grand-canonical replicates");
    LevelsInput sample_levels;
    sample_levels.add_options(sample, false);
    double sample_mu = 0.0, sample_t = 1.0;
    std::uint64_t sample_n = 1000, sample_seed = 42;
    unsigned sample_threads = 0;
    std::string sample_out = "batch.csv";
    sample->add_option("--mu", sample_mu, "chemical potential")->required();
    sample->add_option("--T", sample_t, "temperature")->required();
    sample->add_option("--n", sample_n, "number of replicates");
    sample->add_option("--seed", sample_seed, "64-bit seed");
    sample->add_option("--threads", sample_threads, "worker override (0 = auto)");
    sample->add_option("--out", sample_out, "batch CSV path");

    // thermo
    auto* thermo = app.add_subcommand("thermo", "closed-form thermodynamic report");
    LevelsInput thermo_levels;
    thermo_levels.add_options(thermo, false);
    double thermo_mu = 0.0;
    std::vector<double> thermo_t;
    bool thermo_fixed_mu = false;
    std::optional<double> thermo_target;
    std::string thermo_out;
    thermo->add_option("--mu", thermo_mu, "chemical potential")->required();
    thermo->add_option("--T", thermo_t, "temperature(s)")->required();
    thermo->add_flag("--fixed-mu", thermo_fixed_mu,
                     "difference C at fixed mu instead of fixed L");
    thermo->add_option("--target-L", thermo_target, "hold <L> at this value (fixed-L only)");
    thermo->add_option("--out", thermo_out, "thermo CSV path (stdout when omitted)");

    // fit
    auto* fit = app.add_subcommand("fit", "solve multipliers for strength targets");
    std::string fit_targets, fit_out = "levels.json", fit_statistics = "bosonic";
    double fit_t = 1.0;
    bool fit_self_loops = false;
    fit->add_option("--targets", fit_targets, "node,omega,x_star CSV")->required();
    fit->add_option("--T", fit_t, "temperature");
    fit->add_option("--statistics", fit_statistics, "fermionic|bosonic");
    fit->add_flag("--self-loops", fit_self_loops, "admit the diagonal (market semantics)");
    fit->add_option("--out", fit_out, "fitted levels JSON path");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "exact fixed-L or fixed-margin sets");
    LevelsInput enum_levels;
    enum_levels.add_options(enumerate, false);
    std::string enum_mode = "fixed_links", enum_targets, enum_out;
    std::uint64_t enum_l = 0, enum_cap = kEnumerationCap, enum_seed = 42;
    std::optional<double> enum_bin_width;
    bool enum_sample = false, enum_svg = false;
    enumerate->add_option("--mode", enum_mode, "fixed_links|market");
    enumerate->add_option("--L", enum_l, "link count (fixed_links mode)");
    enumerate->add_option("--bin-width", enum_bin_width, "energy bin width");
    enumerate->add_option("--targets", enum_targets, "margins CSV (market mode)");
    enumerate->add_option("--cap", enum_cap, "enumeration cap");
    enumerate->add_flag("--sample", enum_sample, "draw one uniform table (market mode)");
    enumerate->add_option("--seed", enum_seed, "seed for --sample");
    enumerate->add_flag("--svg", enum_svg, "also emit an SVG histogram");
    enumerate->add_option("--out", enum_out, "output path");

    // relax
    auto* relax = app.add_subcommand("relax", "greedy bilateral exchange to rest");
    std::string relax_targets, relax_out = "trace.csv", relax_allocation;
    relax->add_option("--targets", relax_targets, "node,omega,x_star CSV")->required();
    relax->add_option("--out", relax_out, "trade trace CSV path");
    relax->add_option("--allocation-out", relax_allocation, "terminal allocation CSV path");

    // limits
    auto* limits = app.add_subcommand("limits", "analytic T->0 and T->inf statements");
    std::string limits_spec;
    double limits_mu = 0.0, limits_eps = 1.0;
    limits->add_option("--spec", limits_spec, "graph spec JSON file")->required();
    limits->add_option("--mu", limits_mu, "chemical potential")->required();
    limits->add_option("--eps", limits_eps, "constant level");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "sampling experiment batteries");
    std::string exp_name, exp_outdir = "experiment_out";
    bool exp_svg = false;
    std::optional<int> exp_n_nodes;
    std::optional<double> exp_mu, exp_level_mean, exp_level_sd;
    std::vector<double> exp_t;
    std::optional<std::uint64_t> exp_n, exp_seed, exp_level_seed;
    experiment->add_option("name", exp_name, "energy_distribution|probability_spectrum")
        ->required();
    experiment->add_option("--outdir", exp_outdir, "output directory");
    experiment->add_option("--N", exp_n_nodes, "node count override");
    experiment->add_option("--mu", exp_mu, "chemical potential override");
    experiment->add_option("--T", exp_t, "temperature override(s)");
    experiment->add_option("--n", exp_n, "sample count override");
    experiment->add_option("--seed", exp_seed, "sampling seed override");
    experiment->add_option("--level-seed", exp_level_seed, "level seed override");
    experiment->add_option("--level-mean", exp_level_mean, "gaussian level mean");
    experiment->add_option("--level-sd", exp_level_sd, "gaussian level sd");
    experiment->add_flag("--svg", exp_svg, "also emit SVG histograms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sample->parsed())
            return run_sample(sample_levels, sample_mu, sample_t, sample_n, sample_seed,
                              sample_threads, sample_out);
        if (thermo->parsed())
            return run_thermo(thermo_levels, thermo_mu, thermo_t, thermo_fixed_mu, thermo_target,
                              thermo_out);
        if (fit->parsed())
            return run_fit(fit_targets, fit_t, fit_statistics, fit_self_loops, fit_out);
        if (enumerate->parsed()) {
            if (enum_mode == "fixed_links")
                return run_enumerate_fixed(enum_levels, enum_l, enum_bin_width, enum_cap,
                                           enum_svg, enum_out.empty() ? "hist.csv" : enum_out);
            if (enum_mode == "market")
                return run_enumerate_market(enum_targets, enum_cap, enum_sample, enum_seed,
                                            enum_out);
            throw std::invalid_argument("unknown enumerate mode: " + enum_mode);
        }
        if (relax->parsed()) return run_relax(relax_targets, relax_out, relax_allocation);
        if (limits->parsed()) return run_limits(limits_spec, limits_mu, limits_eps);
        if (experiment->parsed())
            return run_experiment(exp_name, exp_outdir, exp_svg, exp_n_nodes, exp_mu, exp_t,
                                  exp_n, exp_seed, exp_level_seed, exp_level_mean, exp_level_sd);
    } catch (const ResourceError& e) {
        std::cerr << "error[resource]: " << e.what() << "\n";
        return kExitResource;
    } catch (const ModelError& e) {
        std::cerr << "error[model]: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
