// depref: analytic evaluation, Monte Carlo ensembles and parameter sweeps
// for search-provider interventions (blacklisting / depreferencing) against
// website infections.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "depref/errors.hpp"
#include "depref/experiments.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<double> rho, gamma, f, sigma;
    std::optional<int> beta, n, runs, steps, burn_in, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, format, popularity, pop_file;
    std::optional<double> alpha, xmin, lo, hi;
    std::optional<bool> resample;
    bool blacklist = false;
    std::vector<int> betas;
    std::vector<double> sigmas, fs;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Flat key=value config file");
    cmd->add_option("--rho", opts.rho, "Infection probability per step");
    cmd->add_option("--gamma", opts.gamma, "Recovery probability per step");
    cmd->add_option("--f", opts.f, "False positive probability per step");
    cmd->add_option("--beta", opts.beta, "Detection delay in steps");
    cmd->add_option("--sigma", opts.sigma, "Depreferencing factor in [0,1]");
    cmd->add_option("--n", opts.n, "Number of sites");
    cmd->add_option("--runs", opts.runs, "Monte Carlo runs per ensemble");
    cmd->add_option("--steps", opts.steps, "Time steps per run");
    cmd->add_option("--burn-in", opts.burn_in, "Steps discarded before steady-state window");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--threads", opts.threads, "Worker threads (results are identical for any count)");
    cmd->add_option("--out", opts.out, "Output path (stdout when omitted)");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--popularity", opts.popularity, "Popularity kind: uniform or powerlaw")
        ->check(CLI::IsMember({"uniform", "powerlaw"}));
    cmd->add_option("--alpha", opts.alpha, "Power-law exponent magnitude");
    cmd->add_option("--xmin", opts.xmin, "Power-law lower cutoff");
    cmd->add_option("--lo", opts.lo, "Uniform popularity lower bound");
    cmd->add_option("--hi", opts.hi, "Uniform popularity upper bound");
    cmd->add_option("--pop-file", opts.pop_file, "Weights file, one per line");
    cmd->add_option("--resample-per-run", opts.resample,
                    "Resample the population for every run");
    cmd->add_flag("--blacklist", opts.blacklist,
                  "Use the dedicated blacklisting path instead of depreferencing");
    cmd->add_option("--betas", opts.betas, "Sweep values for beta")->delimiter(',');
    cmd->add_option("--sigmas", opts.sigmas, "Sweep values for sigma")->delimiter(',');
    cmd->add_option("--fs", opts.fs, "Sweep values for f")->delimiter(',');
}

depref::ExperimentConfig build_config(const CliOptions& opts, const std::string& command) {
    depref::ExperimentConfig config;
    if (!opts.config_path.empty()) config = depref::load_config_file(opts.config_path);

    using depref::apply_config_entry;
    if (opts.rho) config.sim.params.infection_rate = *opts.rho;
    if (opts.gamma) config.sim.params.recovery_rate = *opts.gamma;
    if (opts.f) config.sim.params.false_positive_rate = *opts.f;
    if (opts.sigma) {
        config.sim.params.depreferencing = *opts.sigma;
        config.sigma_explicit = true;
    }
    if (opts.beta) config.sim.params.detection_delay = *opts.beta;
    if (opts.n) {
        if (*opts.n < 1) throw depref::SpecError("n must be at least 1");
        config.sim.popularity.count = static_cast<std::size_t>(*opts.n);
    }
    if (opts.runs) config.sim.runs = *opts.runs;
    if (opts.steps) config.sim.steps = *opts.steps;
    if (opts.burn_in) config.sim.burn_in = *opts.burn_in;
    if (opts.seed) config.sim.seed = *opts.seed;
    if (opts.threads) config.sim.threads = *opts.threads;
    if (opts.popularity) apply_config_entry(config, "popularity.kind", *opts.popularity);
    if (opts.alpha) config.sim.popularity.alpha = *opts.alpha;
    if (opts.xmin) config.sim.popularity.x_min = *opts.xmin;
    if (opts.lo) config.sim.popularity.lo = *opts.lo;
    if (opts.hi) config.sim.popularity.hi = *opts.hi;
    if (opts.pop_file) config.population_file = *opts.pop_file;
    if (opts.resample) config.sim.resample_population_per_run = *opts.resample;
    if (opts.blacklist) config.sim.intervention = depref::Intervention::Blacklist;
    if (!opts.betas.empty()) config.delay_grid = opts.betas;
    if (!opts.sigmas.empty()) config.sigma_grid = opts.sigmas;
    if (!opts.fs.empty()) config.f_grid = opts.fs;
    if (opts.out) config.out_path = *opts.out;
    if (opts.format) apply_config_entry(config, "format", *opts.format);

    config.finalize(command);
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov model of website infections under search-provider interventions"};
    app.require_subcommand(1);

    CliOptions opts;
    CLI::App* analytic = app.add_subcommand("analytic", "Closed-form report for one scenario");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo ensemble time series");
    CLI::App* sweep_beta =
        app.add_subcommand("sweep-beta", "Steady exposure vs detection delay (sigma = 0)");
    CLI::App* sweep_sigma =
        app.add_subcommand("sweep-sigma", "Steady exposure vs depreferencing (beta = 0)");
    CLI::App* sweep_f =
        app.add_subcommand("sweep-f", "Steady loss vs false positive rate (default sigma = 0.8)");
    CLI::App* heatmap = app.add_subcommand(
        "heatmap", "Outcome changes and critical curves over a (beta', sigma') grid");
    for (CLI::App* cmd : {analytic, simulate, sweep_beta, sweep_sigma, sweep_f, heatmap}) {
        add_common_options(cmd, opts);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) {
            const auto config = build_config(opts, "analytic");
            depref::emit(config, {depref::analytic_table(config)});
        } else if (simulate->parsed()) {
            const auto config = build_config(opts, "simulate");
            depref::emit(config, depref::simulate_tables(config));
        } else if (sweep_beta->parsed()) {
            const auto config = build_config(opts, "sweep-beta");
            depref::emit(config, {depref::sweep_delay_table(config)});
        } else if (sweep_sigma->parsed()) {
            const auto config = build_config(opts, "sweep-sigma");
            depref::emit(config, {depref::sweep_sigma_table(config)});
        } else if (sweep_f->parsed()) {
            const auto config = build_config(opts, "sweep-f");
            depref::emit(config, {depref::sweep_false_positive_table(config)});
        } else if (heatmap->parsed()) {
            const auto config = build_config(opts, "heatmap");
            depref::emit(config, depref::heatmap_tables(config));
        }
    } catch (const depref::ModelError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
