"""Markov model of website infections under search-provider interventions.

The compiled core exposes the model (transition matrix, stationary
distribution, duration pmfs), exact analytics (expected exposure/loss,
variances, sigma solvers, critical values), popularity sampling and the
seeded Monte Carlo ensemble engine.
"""

from depref._core import (
    AnalyticReport,
    CriticalValue,
    EnsembleSummary,
    Intervention,
    ModelError,
    ModelParams,
    Population,
    PopularitySpec,
    ServerState,
    SimConfig,
    SiteState,
    SplitMix64,
    StationaryDistribution,
    TimeSeries,
    analyze,
    critical_sigma_exposure,
    critical_sigma_loss,
    effective_traffic,
    ensemble,
    expected_exposure,
    expected_loss,
    false_duration_pmf,
    infected_duration_pmf,
    load_weights,
    per_site_scaling,
    population_for_run,
    power_law_quantile,
    run,
    run_all,
    sample,
    sigma_for_exposure,
    sigma_for_loss,
    stationary_distribution,
    steady_state_estimate,
    step_server,
    tail_ratio,
    transition_matrix,
    validate,
    variance_exposure,
    variance_loss,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticReport",
    "CriticalValue",
    "EnsembleSummary",
    "Intervention",
    "ModelError",
    "ModelParams",
    "Population",
    "PopularitySpec",
    "ServerState",
    "SimConfig",
    "SiteState",
    "SplitMix64",
    "StationaryDistribution",
    "TimeSeries",
    "analyze",
    "critical_sigma_exposure",
    "critical_sigma_loss",
    "effective_traffic",
    "ensemble",
    "expected_exposure",
    "expected_loss",
    "false_duration_pmf",
    "infected_duration_pmf",
    "load_weights",
    "per_site_scaling",
    "population_for_run",
    "power_law_quantile",
    "run",
    "run_all",
    "sample",
    "sigma_for_exposure",
    "sigma_for_loss",
    "stationary_distribution",
    "steady_state_estimate",
    "step_server",
    "tail_ratio",
    "transition_matrix",
    "validate",
    "variance_exposure",
    "variance_loss",
]
