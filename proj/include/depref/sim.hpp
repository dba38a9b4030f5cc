#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "depref/model.hpp"
#include "depref/popularity.hpp"

namespace depref {

/// Which traffic intervention the search provider applies to sites that have
/// been in Infected/Flagged for at least the detection delay.
enum class Intervention {
    Depreference, // retain sigma^(d-beta+1) of the traffic
    Blacklist,    // drop the traffic entirely (identical to sigma = 0)
};

/// One ensemble's worth of configuration. Runs are reproducible from
/// (seed, run index) alone, independent of thread count.
struct SimConfig {
    ModelParams params;
    PopularitySpec popularity;
    /// Explicit weights (e.g. loaded from a file); overrides `popularity`.
    std::optional<Population> fixed_population;

    int steps = 75;
    int runs = 1000;
    int burn_in = 50; // steady-state window start
    std::uint64_t seed = 0;
    bool resample_population_per_run = false;
    Intervention intervention = Intervention::Depreference;
    int threads = 1;

    /// Throws on invalid parameters; names the offending field.
    void validate() const;
};

/// Per-step outcome of a single run.
struct TimeSeries {
    std::vector<double> exposure; // X_t, fraction of total traffic
    std::vector<double> loss;     // L_t, fraction of total traffic
    std::vector<std::array<int, 3>> state_counts; // (nN, nI, nF) per step

    bool operator==(const TimeSeries&) const = default;
};

/// Across-run aggregation of an ensemble.
struct EnsembleSummary {
    std::vector<double> mean_exposure; // per step, across runs
    std::vector<double> var_exposure;  // sample variance across runs
    std::vector<double> mean_loss;
    std::vector<double> var_loss;

    std::vector<double> run_steady_exposure; // per run, mean over t >= burn_in
    std::vector<double> run_steady_loss;
    std::vector<double> run_tail_ratio; // tail ratio of each run's population

    double steady_exposure = 0.0; // mean of run_steady_exposure
    double steady_loss = 0.0;

    bool operator==(const EnsembleSummary&) const = default;
};

/// Traffic a site actually receives: full weight while uninfected or within
/// the detection delay, then demoted by sigma^(d-beta+1) (or zeroed when
/// blacklisting). Recovery restores the full weight immediately because the
/// duration resets on every state change.
double effective_traffic(double omega, const ServerState& state, const ModelParams& params,
                         Intervention intervention = Intervention::Depreference);

/// The population run `run_index` simulates over, derived deterministically
/// from the config (explicit weights, one shared sample, or a fresh sample
/// per run).
Population population_for_run(const SimConfig& config, int run_index);

/// Simulates one run: all sites start Uninfected, one synchronous transition
/// per step, measurements taken after the transition. Deterministic given
/// (config.seed, run_index).
TimeSeries run(const SimConfig& config, int run_index);

/// All runs of the ensemble, optionally on config.threads workers. The
/// result is identical for any thread count.
std::vector<TimeSeries> run_all(const SimConfig& config);

/// Mean exposure/loss over t >= burn_in.
std::pair<double, double> steady_state_estimate(const TimeSeries& series, int burn_in);

/// Aggregates runs into per-step means/variances and per-run steady values.
EnsembleSummary summarize(const std::vector<TimeSeries>& series,
                          const std::vector<double>& tail_ratios, int burn_in);

/// run_all + summarize.
EnsembleSummary ensemble(const SimConfig& config);

} // namespace depref
