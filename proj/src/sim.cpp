#include "depref/sim.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "depref/errors.hpp"

namespace depref {

void SimConfig::validate() const {
    depref::validate(params);
    if (fixed_population) {
        if (fixed_population->weights.empty()) {
            throw EmptyPopulationError("fixed population has no weights");
        }
    } else {
        popularity.validate();
    }
    if (steps < 1) throw RangeError("steps must be positive");
    if (runs < 1) throw RangeError("runs must be positive");
    if (burn_in < 0) throw RangeError("burn_in must be nonnegative");
    if (burn_in >= steps) throw RangeError("burn_in must be smaller than steps");
    if (threads < 1) throw RangeError("threads must be positive");
    if (fixed_population && resample_population_per_run) {
        throw SpecError("resample_per_run conflicts with an explicit popularity file");
    }
}

double effective_traffic(double omega, const ServerState& state, const ModelParams& params,
                         Intervention intervention) {
    if (!(omega >= 0.0)) throw RangeError("omega must be nonnegative");
    if (state.state == SiteState::Uninfected) return omega;
    if (state.duration < params.detection_delay) return omega;
    if (intervention == Intervention::Blacklist) return 0.0;
    const int demoted_steps = state.duration - params.detection_delay + 1;
    return omega * std::pow(params.depreferencing, static_cast<double>(demoted_steps));
}

Population population_for_run(const SimConfig& config, int run_index) {
    if (config.fixed_population) return *config.fixed_population;
    const std::uint64_t index =
        config.resample_population_per_run ? static_cast<std::uint64_t>(run_index) : 0;
    SplitMix64 rng = derive_stream(config.seed, StreamTag::Population, index);
    return sample(config.popularity, rng);
}

namespace {

TimeSeries run_over(const SimConfig& config, int run_index, const Population& population) {
    const std::size_t n = population.weights.size();
    const auto matrix = transition_matrix(config.params);
    // Demotion factors sigma^k, indexed by steps-since-detection; duration
    // never exceeds the step count.
    const int max_power = config.steps + 1;
    std::vector<double> retained(static_cast<std::size_t>(max_power) + 1, 1.0);
    for (int k = 0; k <= max_power; ++k) {
        retained[static_cast<std::size_t>(k)] =
            config.intervention == Intervention::Blacklist
                ? (k == 0 ? 1.0 : 0.0)
                : std::pow(config.params.depreferencing, static_cast<double>(k));
    }

    SplitMix64 rng = derive_stream(config.seed, StreamTag::Run, static_cast<std::uint64_t>(run_index));
    std::vector<ServerState> sites(n);

    TimeSeries series;
    series.exposure.resize(static_cast<std::size_t>(config.steps));
    series.loss.resize(static_cast<std::size_t>(config.steps));
    series.state_counts.resize(static_cast<std::size_t>(config.steps));

    const int delay = config.params.detection_delay;
    for (int t = 0; t < config.steps; ++t) {
        std::array<int, 3> counts{0, 0, 0};
        double exposed = 0.0;
        double lost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sites[i] = step_server(sites[i], matrix, rng);
            const ServerState& site = sites[i];
            ++counts[static_cast<std::size_t>(site.state)];
            if (site.state == SiteState::Uninfected) continue;
            const double omega = population.weights[i];
            const double served =
                site.duration < delay
                    ? omega
                    : omega * retained[static_cast<std::size_t>(site.duration - delay + 1)];
            if (site.state == SiteState::Infected) {
                exposed += served;
            } else {
                lost += omega - served;
            }
        }
        series.exposure[static_cast<std::size_t>(t)] = exposed / population.total;
        series.loss[static_cast<std::size_t>(t)] = lost / population.total;
        series.state_counts[static_cast<std::size_t>(t)] = counts;
    }
    return series;
}

} // namespace

TimeSeries run(const SimConfig& config, int run_index) {
    config.validate();
    if (run_index < 0 || run_index >= config.runs) {
        throw RangeError("run_index must lie in [0, runs)");
    }
    return run_over(config, run_index, population_for_run(config, run_index));
}

std::vector<TimeSeries> run_all(const SimConfig& config) {
    config.validate();
    std::vector<TimeSeries> results(static_cast<std::size_t>(config.runs));

    // A shared population is sampled once; resampled ensembles derive run k's
    // population from stream (seed, Population, k) so scheduling cannot
    // change any result.
    std::optional<Population> shared;
    if (!config.resample_population_per_run) shared = population_for_run(config, 0);

    auto simulate_run = [&](int k) {
        if (shared) {
            results[static_cast<std::size_t>(k)] = run_over(config, k, *shared);
        } else {
            results[static_cast<std::size_t>(k)] = run_over(config, k, population_for_run(config, k));
        }
    };

    const int workers = std::min(config.threads, config.runs);
    if (workers <= 1) {
        for (int k = 0; k < config.runs; ++k) simulate_run(k);
        return results;
    }

    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int k = next.fetch_add(1); k < config.runs; k = next.fetch_add(1)) {
                simulate_run(k);
            }
        });
    }
    for (auto& worker : pool) worker.join();
    return results;
}

std::pair<double, double> steady_state_estimate(const TimeSeries& series, int burn_in) {
    const int steps = static_cast<int>(series.exposure.size());
    if (burn_in < 0 || burn_in >= steps) {
        throw RangeError("burn_in must lie in [0, steps)");
    }
    double exposure = 0.0;
    double loss = 0.0;
    for (int t = burn_in; t < steps; ++t) {
        exposure += series.exposure[static_cast<std::size_t>(t)];
        loss += series.loss[static_cast<std::size_t>(t)];
    }
    const double window = static_cast<double>(steps - burn_in);
    return {exposure / window, loss / window};
}

EnsembleSummary summarize(const std::vector<TimeSeries>& series,
                          const std::vector<double>& tail_ratios, int burn_in) {
    if (series.empty()) throw RangeError("summarize needs at least one run");
    const std::size_t runs = series.size();
    const std::size_t steps = series[0].exposure.size();

    EnsembleSummary summary;
    summary.mean_exposure.assign(steps, 0.0);
    summary.var_exposure.assign(steps, 0.0);
    summary.mean_loss.assign(steps, 0.0);
    summary.var_loss.assign(steps, 0.0);
    summary.run_tail_ratio = tail_ratios;

    for (const TimeSeries& ts : series) {
        for (std::size_t t = 0; t < steps; ++t) {
            summary.mean_exposure[t] += ts.exposure[t];
            summary.mean_loss[t] += ts.loss[t];
        }
    }
    for (std::size_t t = 0; t < steps; ++t) {
        summary.mean_exposure[t] /= static_cast<double>(runs);
        summary.mean_loss[t] /= static_cast<double>(runs);
    }
    if (runs > 1) {
        for (const TimeSeries& ts : series) {
            for (std::size_t t = 0; t < steps; ++t) {
                const double dx = ts.exposure[t] - summary.mean_exposure[t];
                const double dl = ts.loss[t] - summary.mean_loss[t];
                summary.var_exposure[t] += dx * dx;
                summary.var_loss[t] += dl * dl;
            }
        }
        for (std::size_t t = 0; t < steps; ++t) {
            summary.var_exposure[t] /= static_cast<double>(runs - 1);
            summary.var_loss[t] /= static_cast<double>(runs - 1);
        }
    }

    summary.run_steady_exposure.reserve(runs);
    summary.run_steady_loss.reserve(runs);
    for (const TimeSeries& ts : series) {
        const auto [exposure, loss] = steady_state_estimate(ts, burn_in);
        summary.run_steady_exposure.push_back(exposure);
        summary.run_steady_loss.push_back(loss);
        summary.steady_exposure += exposure;
        summary.steady_loss += loss;
    }
    summary.steady_exposure /= static_cast<double>(runs);
    summary.steady_loss /= static_cast<double>(runs);
    return summary;
}

EnsembleSummary ensemble(const SimConfig& config) {
    const std::vector<TimeSeries> series = run_all(config);
    std::vector<double> tails(static_cast<std::size_t>(config.runs));
    if (config.resample_population_per_run) {
        for (int k = 0; k < config.runs; ++k) {
            tails[static_cast<std::size_t>(k)] = population_for_run(config, k).tail_ratio;
        }
    } else {
        const double shared = population_for_run(config, 0).tail_ratio;
        for (double& t : tails) t = shared;
    }
    return summarize(series, tails, config.burn_in);
}

} // namespace depref
