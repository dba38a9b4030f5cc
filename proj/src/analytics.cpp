#include "depref/analytics.hpp"

#include <cmath>
#include <sstream>

#include "depref/errors.hpp"

namespace depref {

namespace {

// Conditioning floor for the closed forms; below this the geometric sums are
// dominated by cancellation and the scenario has no meaningful steady state.
constexpr double kMinRateSum = 1e-4;

// Numerical slack when deciding whether a solved sigma sits on the [0,1]
// boundary or a target sits on the edge of its attainable range.
constexpr double kBoundarySlack = 1e-12;

void check_analytic_domain(const ModelParams& params) {
    check_rates(params);
    if (params.recovery_rate + params.infection_rate < kMinRateSum) {
        std::ostringstream msg;
        msg << "gamma + rho = " << params.recovery_rate + params.infection_rate
            << " is below " << kMinRateSum << "; closed forms are not well conditioned";
        throw DegenerateError(msg.str());
    }
}

double snap_to_unit(double sigma) {
    if (sigma > -kBoundarySlack && sigma < 0.0) return 0.0;
    if (sigma > 1.0 && sigma < 1.0 + kBoundarySlack) return 1.0;
    return sigma;
}

bool in_unit_interval(double sigma) { return sigma >= 0.0 && sigma <= 1.0; }

double exposure_with_sigma(const ModelParams& params, double sigma) {
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    if (sigma * (1.0 - gamma) >= 1.0) {
        throw SingularityError("sigma*(1-gamma) = 1: the exposure series diverges");
    }
    // The bracket telescopes to 1/gamma with no intervention.
    if (sigma == 1.0) return rho / (rho + gamma);
    const double decay = std::pow(1.0 - gamma, static_cast<double>(params.detection_delay));
    // Algebraically identical to the (rho*gamma/(rho+gamma)) * [...] form but
    // with the removable gamma division cancelled.
    const double pre_detection = rho * (1.0 - decay) / (rho + gamma);
    const double post_detection =
        rho * gamma * sigma * decay / ((rho + gamma) * (1.0 - sigma * (1.0 - gamma)));
    return pre_detection + post_detection;
}

double loss_with_sigma(const ModelParams& params, double sigma) {
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    const double f = params.false_positive_rate;
    const double stay = 1.0 - (gamma + rho);
    if (sigma * stay >= 1.0) {
        throw SingularityError("sigma*(1-(gamma+rho)) = 1: the loss series diverges");
    }
    // The bracket vanishes identically with no intervention.
    if (sigma == 1.0) return 0.0;
    const double prefactor = f * gamma *
                             std::pow(stay, static_cast<double>(params.detection_delay)) /
                             (f + gamma + rho);
    return prefactor * (1.0 / (gamma + rho) - sigma / (1.0 - sigma * stay));
}

} // namespace

double expected_exposure(const ModelParams& params) {
    check_analytic_domain(params);
    return exposure_with_sigma(params, params.depreferencing);
}

double expected_loss(const ModelParams& params) {
    check_analytic_domain(params);
    return loss_with_sigma(params, params.depreferencing);
}

double per_site_scaling(double omega, double population_fraction) {
    if (!(omega >= 0.0)) throw RangeError("omega must be nonnegative");
    return omega * population_fraction;
}

double variance_exposure(const ModelParams& params, double tail_ratio) {
    check_analytic_domain(params);
    if (!(tail_ratio > 0.0 && tail_ratio <= 1.0)) {
        throw RangeError("tail_ratio must lie in (0, 1]");
    }
    const double sigma = params.depreferencing;
    const double mean = exposure_with_sigma(params, sigma);
    const double second_moment = exposure_with_sigma(params, sigma * sigma);
    return (second_moment - mean * mean) * tail_ratio;
}

double variance_loss(const ModelParams& params, double tail_ratio) {
    check_analytic_domain(params);
    if (!(tail_ratio > 0.0 && tail_ratio <= 1.0)) {
        throw RangeError("tail_ratio must lie in (0, 1]");
    }
    const double sigma = params.depreferencing;
    const double mean = loss_with_sigma(params, sigma);
    const double squared_shortfall = loss_with_sigma(params, sigma * sigma);
    return (2.0 * mean - squared_shortfall - mean * mean) * tail_ratio;
}

CriticalValue sigma_for_exposure(const ModelParams& params, double target_exposure) {
    check_analytic_domain(params);
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    if (rho * gamma == 0.0) {
        throw DegenerateError("sigma_for_exposure requires rho > 0 and gamma > 0");
    }
    const double decay = std::pow(1.0 - gamma, static_cast<double>(params.detection_delay));
    const double shifted =
        (rho + gamma) * target_exposure / (rho * gamma) - (1.0 - decay) / gamma;
    const double denominator = (1.0 - gamma) * shifted + decay;
    if (denominator == 0.0) {
        throw DenominatorError("sigma_for_exposure: solver denominator vanishes");
    }
    const double sigma = snap_to_unit(shifted / denominator);

    const double lowest = exposure_with_sigma(params, 0.0);
    const double ceiling = rho / (rho + gamma); // exposure with no intervention
    const bool attainable =
        target_exposure >= lowest - kBoundarySlack && target_exposure < ceiling;
    return CriticalValue{sigma, attainable && in_unit_interval(sigma)};
}

CriticalValue sigma_for_loss(const ModelParams& params, double target_loss) {
    check_analytic_domain(params);
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    const double f = params.false_positive_rate;
    const double stay = 1.0 - (gamma + rho);
    const double prefactor = f * gamma *
                             std::pow(stay, static_cast<double>(params.detection_delay)) /
                             (f + gamma + rho);
    if (prefactor == 0.0) {
        throw DegenerateError("sigma_for_loss: no loss is attainable for these parameters");
    }
    const double shifted = 1.0 / (gamma + rho) - target_loss / prefactor;
    const double denominator = 1.0 + stay * shifted;
    if (denominator == 0.0) {
        throw DenominatorError("sigma_for_loss: solver denominator vanishes");
    }
    const double sigma = snap_to_unit(shifted / denominator);

    const double highest = loss_with_sigma(params, 0.0);
    const bool attainable =
        target_loss >= -kBoundarySlack && target_loss <= highest + kBoundarySlack;
    return CriticalValue{sigma, attainable && in_unit_interval(sigma)};
}

CriticalValue critical_sigma_exposure(const ModelParams& base, int new_delay) {
    check_analytic_domain(base);
    const double gamma = base.recovery_rate;
    const double sigma = base.depreferencing;
    if (sigma * (1.0 - gamma) >= 1.0) {
        throw SingularityError("sigma*(1-gamma) = 1: base exposure diverges");
    }
    const double shift =
        std::pow(1.0 - gamma, static_cast<double>(base.detection_delay - new_delay));
    const double a =
        1.0 - shift + sigma * gamma * shift / (1.0 - sigma * (1.0 - gamma));
    const double candidate = snap_to_unit(a / (gamma + a * (1.0 - gamma)));
    // Vanishing denominators surface as inf/nan and are reported infeasible.
    return CriticalValue{candidate, in_unit_interval(candidate)};
}

CriticalValue critical_sigma_loss(const ModelParams& base, int new_delay) {
    check_analytic_domain(base);
    const double rate_sum = base.recovery_rate + base.infection_rate;
    const double sigma = base.depreferencing;
    const double stay = 1.0 - rate_sum;
    if (sigma * stay >= 1.0) {
        throw SingularityError("sigma*(1-(gamma+rho)) = 1: base loss diverges");
    }
    const double shift = std::pow(stay, static_cast<double>(base.detection_delay - new_delay));
    const double b =
        1.0 / rate_sum - shift * (1.0 / rate_sum - sigma / (1.0 - sigma * stay));
    const double candidate = snap_to_unit(b / (1.0 + b * stay));
    return CriticalValue{candidate, in_unit_interval(candidate)};
}

AnalyticReport analyze(const ModelParams& params, double tail_ratio) {
    AnalyticReport report;
    report.params = params;
    report.tail_ratio = tail_ratio;
    report.stationary = stationary_distribution(params);
    report.expected_exposure = expected_exposure(params);
    report.expected_loss = expected_loss(params);
    report.var_exposure = variance_exposure(params, tail_ratio);
    report.var_loss = variance_loss(params, tail_ratio);
    return report;
}

} // namespace depref
