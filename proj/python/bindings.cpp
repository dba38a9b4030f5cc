#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "depref/analytics.hpp"
#include "depref/errors.hpp"
#include "depref/experiments.hpp"
#include "depref/model.hpp"
#include "depref/popularity.hpp"
#include "depref/rng.hpp"
#include "depref/sim.hpp"

namespace py = pybind11;
using namespace depref;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Markov model of website infections under search-provider interventions";

    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    py::enum_<SiteState>(m, "SiteState")
        .value("UNINFECTED", SiteState::Uninfected)
        .value("INFECTED", SiteState::Infected)
        .value("FLAGGED", SiteState::Flagged);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double rho, double gamma, double f, int beta, double sigma) {
                 return ModelParams{rho, gamma, f, beta, sigma};
             }),
             py::arg("rho") = 0.01, py::arg("gamma") = 0.1, py::arg("f") = 0.0,
             py::arg("beta") = 0, py::arg("sigma") = 1.0)
        .def_readwrite("rho", &ModelParams::infection_rate)
        .def_readwrite("gamma", &ModelParams::recovery_rate)
        .def_readwrite("f", &ModelParams::false_positive_rate)
        .def_readwrite("beta", &ModelParams::detection_delay)
        .def_readwrite("sigma", &ModelParams::depreferencing)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(rho=" + format_double(p.infection_rate) +
                   ", gamma=" + format_double(p.recovery_rate) +
                   ", f=" + format_double(p.false_positive_rate) +
                   ", beta=" + std::to_string(p.detection_delay) +
                   ", sigma=" + format_double(p.depreferencing) + ")";
        });

    py::class_<ServerState>(m, "ServerState")
        .def(py::init<SiteState, int>(), py::arg("state") = SiteState::Uninfected,
             py::arg("duration") = 0)
        .def_readwrite("state", &ServerState::state)
        .def_readwrite("duration", &ServerState::duration);

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next_u64", &SplitMix64::next_u64)
        .def("next_double", &SplitMix64::next_double);

    py::class_<StationaryDistribution>(m, "StationaryDistribution")
        .def_readonly("infected", &StationaryDistribution::infected)
        .def_readonly("uninfected", &StationaryDistribution::uninfected)
        .def_readonly("flagged", &StationaryDistribution::flagged);

    m.def("validate", [](const ModelParams& p) { return validate(p); },
          py::arg("params"), "Raises ModelError unless the parameter set is valid and ergodic.");
    m.def("transition_matrix",
          [](const ModelParams& p) { return transition_matrix(p).p; }, py::arg("params"),
          "3x3 row-stochastic matrix in (uninfected, infected, flagged) order.");
    m.def("stationary_distribution",
          [](const ModelParams& p) {
              const auto d = stationary_distribution(p);
              return py::make_tuple(d.infected, d.uninfected, d.flagged);
          },
          py::arg("params"), "Long-run (Pr[I], Pr[N], Pr[F]).");
    m.def("infected_duration_pmf", &infected_duration_pmf, py::arg("params"), py::arg("x"));
    m.def("false_duration_pmf", &false_duration_pmf, py::arg("params"), py::arg("x"));
    m.def("step_server",
          [](const ServerState& s, const ModelParams& p, SplitMix64& rng) {
              return step_server(s, p, rng);
          },
          py::arg("state"), py::arg("params"), py::arg("rng"));

    py::class_<CriticalValue>(m, "CriticalValue")
        .def_readonly("sigma", &CriticalValue::sigma)
        .def_readonly("feasible", &CriticalValue::feasible)
        .def("__repr__", [](const CriticalValue& v) {
            return "CriticalValue(sigma=" + format_double(v.sigma) +
                   ", feasible=" + (v.feasible ? std::string("True") : std::string("False")) + ")";
        });

    py::class_<AnalyticReport>(m, "AnalyticReport")
        .def_readonly("params", &AnalyticReport::params)
        .def_readonly("tail_ratio", &AnalyticReport::tail_ratio)
        .def_readonly("stationary", &AnalyticReport::stationary)
        .def_readonly("expected_exposure", &AnalyticReport::expected_exposure)
        .def_readonly("expected_loss", &AnalyticReport::expected_loss)
        .def_readonly("var_exposure", &AnalyticReport::var_exposure)
        .def_readonly("var_loss", &AnalyticReport::var_loss);

    m.def("expected_exposure", &expected_exposure, py::arg("params"));
    m.def("expected_loss", &expected_loss, py::arg("params"));
    m.def("per_site_scaling", &per_site_scaling, py::arg("omega"), py::arg("population_fraction"));
    m.def("variance_exposure", &variance_exposure, py::arg("params"), py::arg("tail_ratio"));
    m.def("variance_loss", &variance_loss, py::arg("params"), py::arg("tail_ratio"));
    m.def("sigma_for_exposure", &sigma_for_exposure, py::arg("params"), py::arg("target"));
    m.def("sigma_for_loss", &sigma_for_loss, py::arg("params"), py::arg("target"));
    m.def("critical_sigma_exposure", &critical_sigma_exposure, py::arg("params"),
          py::arg("new_beta"));
    m.def("critical_sigma_loss", &critical_sigma_loss, py::arg("params"), py::arg("new_beta"));
    m.def("analyze", &analyze, py::arg("params"), py::arg("tail_ratio") = 1.0);

    py::class_<PopularitySpec> popularity_spec(m, "PopularitySpec");
    py::enum_<PopularitySpec::Kind>(popularity_spec, "Kind")
        .value("UNIFORM", PopularitySpec::Kind::Uniform)
        .value("POWER_LAW", PopularitySpec::Kind::PowerLaw);
    popularity_spec.def(py::init<>())
        .def_static("uniform", &PopularitySpec::uniform, py::arg("count"), py::arg("lo") = 0.0,
                    py::arg("hi") = 1.0)
        .def_static("power_law", &PopularitySpec::power_law, py::arg("count"),
                    py::arg("alpha") = 1.4, py::arg("x_min") = 1.0)
        .def_readwrite("kind", &PopularitySpec::kind)
        .def_readwrite("count", &PopularitySpec::count)
        .def_readwrite("lo", &PopularitySpec::lo)
        .def_readwrite("hi", &PopularitySpec::hi)
        .def_readwrite("alpha", &PopularitySpec::alpha)
        .def_readwrite("x_min", &PopularitySpec::x_min)
        .def("validate", &PopularitySpec::validate);

    py::class_<Population>(m, "Population")
        .def_static("from_weights", &Population::from_weights, py::arg("weights"))
        .def_readonly("weights", &Population::weights)
        .def_readonly("total", &Population::total)
        .def_readonly("tail_ratio", &Population::tail_ratio);

    m.def("tail_ratio",
          [](const std::vector<double>& weights) {
              return tail_ratio(std::span<const double>(weights));
          },
          py::arg("weights"));
    m.def("power_law_quantile", &power_law_quantile, py::arg("u"), py::arg("alpha"),
          py::arg("x_min"));
    m.def("sample", &sample, py::arg("spec"), py::arg("rng"));
    m.def("load_weights", &load_weights, py::arg("path"));

    py::enum_<Intervention>(m, "Intervention")
        .value("DEPREFERENCE", Intervention::Depreference)
        .value("BLACKLIST", Intervention::Blacklist);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("params", &SimConfig::params)
        .def_readwrite("popularity", &SimConfig::popularity)
        .def_readwrite("fixed_population", &SimConfig::fixed_population)
        .def_readwrite("steps", &SimConfig::steps)
        .def_readwrite("runs", &SimConfig::runs)
        .def_readwrite("burn_in", &SimConfig::burn_in)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("resample_population_per_run", &SimConfig::resample_population_per_run)
        .def_readwrite("intervention", &SimConfig::intervention)
        .def_readwrite("threads", &SimConfig::threads)
        .def("validate", &SimConfig::validate);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("exposure", &TimeSeries::exposure)
        .def_readonly("loss", &TimeSeries::loss)
        .def_readonly("state_counts", &TimeSeries::state_counts);

    py::class_<EnsembleSummary>(m, "EnsembleSummary")
        .def_readonly("mean_exposure", &EnsembleSummary::mean_exposure)
        .def_readonly("var_exposure", &EnsembleSummary::var_exposure)
        .def_readonly("mean_loss", &EnsembleSummary::mean_loss)
        .def_readonly("var_loss", &EnsembleSummary::var_loss)
        .def_readonly("run_steady_exposure", &EnsembleSummary::run_steady_exposure)
        .def_readonly("run_steady_loss", &EnsembleSummary::run_steady_loss)
        .def_readonly("run_tail_ratio", &EnsembleSummary::run_tail_ratio)
        .def_readonly("steady_exposure", &EnsembleSummary::steady_exposure)
        .def_readonly("steady_loss", &EnsembleSummary::steady_loss);

    m.def("effective_traffic", &effective_traffic, py::arg("omega"), py::arg("state"),
          py::arg("params"), py::arg("intervention") = Intervention::Depreference);
    m.def("population_for_run", &population_for_run, py::arg("config"), py::arg("run_index"));
    m.def("run", &run, py::arg("config"), py::arg("run_index"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_all", &run_all, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("steady_state_estimate", &steady_state_estimate, py::arg("series"), py::arg("burn_in"));
    m.def("ensemble", &ensemble, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
