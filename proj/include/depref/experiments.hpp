#pragma once

#include <optional>
#include <string>
#include <vector>

#include "depref/analytics.hpp"
#include "depref/sim.hpp"
#include "depref/table.hpp"

namespace depref {

/// Scenario + sweep grids + output destination for one CLI invocation.
struct ExperimentConfig {
    SimConfig sim;

    std::vector<int> delay_grid;    // beta values for sweeps/heatmaps
    std::vector<double> sigma_grid; // sigma values
    std::vector<double> f_grid;     // false positive rates

    /// Set when the user pinned sigma explicitly; the f-sweep otherwise
    /// defaults to sigma = 0.8.
    bool sigma_explicit = false;

    std::optional<std::string> population_file;
    /// Set by "popularity.kind = file"; requires population_file.
    bool popularity_kind_file = false;

    enum class Format { Csv, Json };
    std::string out_path; // empty = stdout
    Format format = Format::Csv;

    /// Fills sim.fixed_population from population_file and applies grid
    /// defaults for the given command. Throws on invalid settings.
    void finalize(const std::string& command);
};

/// Parses a flat `key = value` config file ('#' comments). Unknown keys are
/// rejected so typos cannot silently change a sweep.
ExperimentConfig load_config_file(const std::string& path);

/// Applies one config-file entry (also used for CLI overrides).
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

/// Closed forms for the configured scenario, one wide row.
Table analytic_table(const ExperimentConfig& config);

/// Ensemble tables: per-step means/variances with their analytic
/// counterparts, and per-run steady values.
std::vector<Table> simulate_tables(const ExperimentConfig& config);

/// Steady exposure vs detection delay at sigma = 0 (blacklisting sweep).
Table sweep_delay_table(const ExperimentConfig& config);

/// Steady exposure vs sigma at beta = 0.
Table sweep_sigma_table(const ExperimentConfig& config);

/// Steady loss vs false positive rate.
Table sweep_false_positive_table(const ExperimentConfig& config);

/// Analytic (beta', sigma') grid of outcome changes from the configured
/// base, the critical curves with feasibility flags, and the loss change at
/// sigma' = sigma_X per false positive rate.
std::vector<Table> heatmap_tables(const ExperimentConfig& config);

/// Writes tables as configured: CSV to out_path (+ sibling files for the
/// second and later tables) or one JSON document; stdout when no path.
void emit(const ExperimentConfig& config, const std::vector<Table>& tables);

} // namespace depref
