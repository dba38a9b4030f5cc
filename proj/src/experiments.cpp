#include "depref/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "depref/errors.hpp"

namespace depref {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw SpecError(key + ": expected a number, got '" + value + "'");
    }
    if (used != value.size()) throw SpecError(key + ": expected a number, got '" + value + "'");
    return parsed;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw SpecError(key + ": expected an integer, got '" + value + "'");
    }
    if (used != value.size()) throw SpecError(key + ": expected an integer, got '" + value + "'");
    return parsed;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw SpecError(key + ": expected true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> parsed;
    for (const std::string& item : split_list(value)) parsed.push_back(parse_double(key, item));
    return parsed;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> parsed;
    for (const std::string& item : split_list(value)) {
        parsed.push_back(static_cast<int>(parse_int(key, item)));
    }
    return parsed;
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        values[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    }
    return values;
}

/// Standard error of the mean of the per-run steady values.
double steady_standard_error(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double sum_sq = 0.0;
    for (double v : values) sum_sq += (v - mean) * (v - mean);
    const double variance = sum_sq / static_cast<double>(values.size() - 1);
    return std::sqrt(variance / static_cast<double>(values.size()));
}

} // namespace

void ExperimentConfig::finalize(const std::string& command) {
    if (popularity_kind_file && !population_file) {
        throw SpecError("popularity.kind = file requires popularity.file");
    }
    if (population_file) {
        sim.fixed_population = load_weights(*population_file);
    }
    if (command == "sweep-f" && !sigma_explicit) {
        sim.params.depreferencing = 0.8;
    }
    if (delay_grid.empty()) {
        if (command == "sweep-beta") {
            for (int beta = 0; beta <= 40; beta += 2) delay_grid.push_back(beta);
        } else if (command == "heatmap") {
            for (int beta = 0; beta <= 20; ++beta) delay_grid.push_back(beta);
        }
    }
    if (sigma_grid.empty() && (command == "sweep-sigma" || command == "heatmap")) {
        sigma_grid = linspace(0.0, 1.0, 21);
    }
    if (f_grid.empty()) {
        if (command == "sweep-f") {
            // Keep the default grid inside the row-stochastic region rho+f <= 1.
            for (double f : linspace(0.0, 1.0, 21)) {
                if (f + sim.params.infection_rate <= 1.0) f_grid.push_back(f);
            }
        } else if (command == "heatmap") {
            f_grid = {0.01, 0.05, 0.1, 0.2, 0.5};
        }
    }
    sim.validate();
}

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
    ModelParams& params = config.sim.params;
    PopularitySpec& pop = config.sim.popularity;
    if (key == "rho") {
        params.infection_rate = parse_double(key, value);
    } else if (key == "gamma") {
        params.recovery_rate = parse_double(key, value);
    } else if (key == "f") {
        params.false_positive_rate = parse_double(key, value);
    } else if (key == "beta") {
        params.detection_delay = static_cast<int>(parse_int(key, value));
    } else if (key == "sigma") {
        params.depreferencing = parse_double(key, value);
        config.sigma_explicit = true;
    } else if (key == "n") {
        const long long n = parse_int(key, value);
        if (n < 1) throw SpecError("n must be at least 1");
        pop.count = static_cast<std::size_t>(n);
    } else if (key == "steps") {
        config.sim.steps = static_cast<int>(parse_int(key, value));
    } else if (key == "runs") {
        config.sim.runs = static_cast<int>(parse_int(key, value));
    } else if (key == "burn_in") {
        config.sim.burn_in = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        config.sim.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "threads") {
        config.sim.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "resample_per_run") {
        config.sim.resample_population_per_run = parse_bool(key, value);
    } else if (key == "mode") {
        if (value == "deprefer") {
            config.sim.intervention = Intervention::Depreference;
        } else if (value == "blacklist") {
            config.sim.intervention = Intervention::Blacklist;
        } else {
            throw SpecError("mode must be 'deprefer' or 'blacklist', got '" + value + "'");
        }
    } else if (key == "popularity.kind") {
        if (value == "uniform") {
            pop.kind = PopularitySpec::Kind::Uniform;
        } else if (value == "powerlaw") {
            pop.kind = PopularitySpec::Kind::PowerLaw;
        } else if (value == "file") {
            config.popularity_kind_file = true;
        } else {
            throw SpecError("popularity.kind must be uniform, powerlaw or file");
        }
    } else if (key == "popularity.lo") {
        pop.lo = parse_double(key, value);
    } else if (key == "popularity.hi") {
        pop.hi = parse_double(key, value);
    } else if (key == "popularity.alpha") {
        pop.alpha = parse_double(key, value);
    } else if (key == "popularity.xmin") {
        pop.x_min = parse_double(key, value);
    } else if (key == "popularity.file") {
        config.population_file = value;
    } else if (key == "sweep.betas") {
        config.delay_grid = parse_int_list(key, value);
    } else if (key == "sweep.sigmas") {
        config.sigma_grid = parse_double_list(key, value);
    } else if (key == "sweep.fs") {
        config.f_grid = parse_double_list(key, value);
    } else if (key == "out") {
        config.out_path = value;
    } else if (key == "format") {
        if (value == "csv") {
            config.format = ExperimentConfig::Format::Csv;
        } else if (value == "json") {
            config.format = ExperimentConfig::Format::Json;
        } else {
            throw SpecError("format must be csv or json");
        }
    } else {
        throw SpecError("unknown config key: " + key);
    }
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open config file: " + path);
    ExperimentConfig config;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto equals = line.find('=');
        if (equals == std::string::npos) {
            std::ostringstream msg;
            msg << path << ":" << line_number << ": expected 'key = value'";
            throw SpecError(msg.str());
        }
        apply_config_entry(config, trim(line.substr(0, equals)), trim(line.substr(equals + 1)));
    }
    return config;
}

Table analytic_table(const ExperimentConfig& config) {
    const Population population = population_for_run(config.sim, 0);
    const AnalyticReport report = analyze(config.sim.params, population.tail_ratio);

    Table table;
    table.name = "analytic";
    table.columns = {"rho", "gamma", "f", "beta", "sigma", "n", "tail_ratio",
                     "p_infected", "p_uninfected", "p_flagged",
                     "expected_exposure", "expected_loss", "var_exposure", "var_loss"};
    table.add_row({report.params.infection_rate, report.params.recovery_rate,
                   report.params.false_positive_rate,
                   static_cast<double>(report.params.detection_delay),
                   report.params.depreferencing,
                   static_cast<double>(population.weights.size()), report.tail_ratio,
                   report.stationary.infected, report.stationary.uninfected,
                   report.stationary.flagged, report.expected_exposure, report.expected_loss,
                   report.var_exposure, report.var_loss});
    return table;
}

std::vector<Table> simulate_tables(const ExperimentConfig& config) {
    const EnsembleSummary summary = ensemble(config.sim);
    const double analytic_x = expected_exposure(config.sim.params);
    const double analytic_l = expected_loss(config.sim.params);

    Table per_step;
    per_step.name = "per_step";
    per_step.columns = {"t", "mean_X", "var_X", "mean_L", "var_L", "analytic_EX", "analytic_EL"};
    for (std::size_t t = 0; t < summary.mean_exposure.size(); ++t) {
        per_step.add_row({static_cast<double>(t), summary.mean_exposure[t],
                          summary.var_exposure[t], summary.mean_loss[t], summary.var_loss[t],
                          analytic_x, analytic_l});
    }

    Table per_run;
    per_run.name = "per_run";
    per_run.columns = {"run", "steady_X", "steady_L"};
    for (std::size_t k = 0; k < summary.run_steady_exposure.size(); ++k) {
        per_run.add_row({static_cast<double>(k), summary.run_steady_exposure[k],
                         summary.run_steady_loss[k]});
    }
    return {std::move(per_step), std::move(per_run)};
}

Table sweep_delay_table(const ExperimentConfig& config) {
    Table table;
    table.name = "sweep_beta";
    table.columns = {"beta", "analytic_EX", "sim_X", "sim_se_X"};
    for (int beta : config.delay_grid) {
        SimConfig point = config.sim;
        point.params.detection_delay = beta;
        point.params.depreferencing = 0.0;
        const EnsembleSummary summary = ensemble(point);
        table.add_row({static_cast<double>(beta), expected_exposure(point.params),
                       summary.steady_exposure,
                       steady_standard_error(summary.run_steady_exposure,
                                             summary.steady_exposure)});
    }
    return table;
}

Table sweep_sigma_table(const ExperimentConfig& config) {
    Table table;
    table.name = "sweep_sigma";
    table.columns = {"sigma", "analytic_EX", "sim_X", "sim_se_X"};
    for (double sigma : config.sigma_grid) {
        SimConfig point = config.sim;
        point.params.detection_delay = 0;
        point.params.depreferencing = sigma;
        const EnsembleSummary summary = ensemble(point);
        table.add_row({sigma, expected_exposure(point.params), summary.steady_exposure,
                       steady_standard_error(summary.run_steady_exposure,
                                             summary.steady_exposure)});
    }
    return table;
}

Table sweep_false_positive_table(const ExperimentConfig& config) {
    Table table;
    table.name = "sweep_f";
    table.columns = {"f",          "analytic_EL",    "sim_L", "sim_se_L",
                     "analytic_var_L", "sim_slice_var_L"};
    for (double f : config.f_grid) {
        SimConfig point = config.sim;
        point.params.false_positive_rate = f;
        validate(point.params); // report bad swept values before running
        const EnsembleSummary summary = ensemble(point);
        const double tail = summary.run_tail_ratio.front();
        table.add_row({f, expected_loss(point.params), summary.steady_loss,
                       steady_standard_error(summary.run_steady_loss, summary.steady_loss),
                       variance_loss(point.params, tail), summary.var_loss.back()});
    }
    return table;
}

std::vector<Table> heatmap_tables(const ExperimentConfig& config) {
    const ModelParams& base = config.sim.params;
    const double base_exposure = expected_exposure(base);
    const double base_loss = expected_loss(base);

    Table grid;
    grid.name = "grid";
    grid.columns = {"beta_prime", "sigma_prime", "delta_EX", "delta_EL"};
    for (int beta : config.delay_grid) {
        for (double sigma : config.sigma_grid) {
            ModelParams varied = base;
            varied.detection_delay = beta;
            varied.depreferencing = sigma;
            grid.add_row({static_cast<double>(beta), sigma,
                          base_exposure - expected_exposure(varied),
                          base_loss - expected_loss(varied)});
        }
    }

    Table critical;
    critical.name = "critical";
    critical.columns = {"beta_prime", "sigma_X", "feasible_X", "sigma_L", "feasible_L"};
    for (int beta : config.delay_grid) {
        const CriticalValue for_exposure = critical_sigma_exposure(base, beta);
        const CriticalValue for_loss = critical_sigma_loss(base, beta);
        critical.add_row({static_cast<double>(beta), for_exposure.sigma,
                          for_exposure.feasible ? 1.0 : 0.0, for_loss.sigma,
                          for_loss.feasible ? 1.0 : 0.0});
    }

    // Loss change when exposure is pinned to the base via sigma' = sigma_X;
    // infeasible cells carry NaN and feasible = 0.
    Table tradeoff;
    tradeoff.name = "tradeoff";
    tradeoff.columns = {"beta_prime", "f", "delta_EL_at_sigma_X", "feasible"};
    for (int beta : config.delay_grid) {
        const CriticalValue for_exposure = critical_sigma_exposure(base, beta);
        for (double f : config.f_grid) {
            ModelParams at_f = base;
            at_f.false_positive_rate = f;
            validate(at_f);
            double delta = std::numeric_limits<double>::quiet_NaN();
            if (for_exposure.feasible) {
                ModelParams varied = at_f;
                varied.detection_delay = beta;
                varied.depreferencing = for_exposure.sigma;
                delta = expected_loss(at_f) - expected_loss(varied);
            }
            tradeoff.add_row({static_cast<double>(beta), f, delta,
                              for_exposure.feasible ? 1.0 : 0.0});
        }
    }

    return {std::move(grid), std::move(critical), std::move(tradeoff)};
}

void emit(const ExperimentConfig& config, const std::vector<Table>& tables) {
    if (config.format == ExperimentConfig::Format::Json) {
        const std::string document = to_json(tables);
        if (config.out_path.empty()) {
            std::cout << document;
        } else {
            write_text_file(config.out_path, document);
        }
        return;
    }
    if (config.out_path.empty()) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i > 0) std::cout << '\n';
            std::cout << "# " << tables[i].name << '\n' << to_csv(tables[i]);
        }
        return;
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const std::string path =
            i == 0 ? config.out_path : sibling_path(config.out_path, tables[i].name);
        write_text_file(path, to_csv(tables[i]));
    }
}

} // namespace depref
