#pragma once

#include "depref/model.hpp"

namespace depref {

/// A depreferencing setting produced by a solver. Values outside [0, 1]
/// (or targets outside the attainable range) are reported via `feasible`
/// rather than clamped, so sweeps can draw the feasibility boundary.
struct CriticalValue {
    double sigma = 0.0;
    bool feasible = false;
};

/// Everything the closed forms say about one scenario.
struct AnalyticReport {
    ModelParams params;
    double tail_ratio = 1.0;
    StationaryDistribution stationary;
    double expected_exposure = 0.0;
    double expected_loss = 0.0;
    double var_exposure = 0.0;
    double var_loss = 0.0;
};

/// Expected fraction of total traffic landing on infected sites per step:
///   rho*gamma/(rho+gamma) * [ (1-(1-gamma)^beta)/gamma
///                             + sigma*(1-gamma)^beta/(1-sigma*(1-gamma)) ]
/// Throws SingularityError when sigma*(1-gamma) = 1 (sigma=1 with gamma=0)
/// and DegenerateError when gamma+rho is below the conditioning floor.
double expected_exposure(const ModelParams& params);

/// Expected fraction of total traffic lost by falsely flagged sites:
///   f*gamma*(1-(rho+gamma))^beta/(f+gamma+rho)
///     * [ 1/(gamma+rho) - sigma/(1-sigma*(1-(gamma+rho))) ]
double expected_loss(const ModelParams& params);

/// Recovers a per-site expectation from the weight-free population form.
double per_site_scaling(double omega, double population_fraction);

/// Var[X(beta,sigma)] = (E[X(beta,sigma^2)] - E[X(beta,sigma)]^2) * tail_ratio
/// where tail_ratio is the population's sum(w^2)/sum(w)^2.
double variance_exposure(const ModelParams& params, double tail_ratio);

/// Var[L(beta,sigma)] = (2 E[L(beta,sigma)] - E[L(beta,sigma^2)]
///                       - E[L(beta,sigma)]^2) * tail_ratio.
double variance_loss(const ModelParams& params, double tail_ratio);

/// Solves expected_exposure(params with sigma) = target for sigma. The
/// params' own sigma is ignored. Targets outside [E[X(beta,0)], Pr[I]) are
/// reported infeasible.
CriticalValue sigma_for_exposure(const ModelParams& params, double target_exposure);

/// Solves expected_loss(params with sigma) = target for sigma. Attainable
/// targets lie in [0, E[L(beta,0)]]; both endpoints included.
CriticalValue sigma_for_loss(const ModelParams& params, double target_loss);

/// The sigma that keeps expected exposure unchanged when the detection
/// delay moves from params.detection_delay to new_delay:
///   sigma_X = a / (gamma + a*(1-gamma)),
///   a = 1 - (1-gamma)^(beta-beta') + sigma*gamma*(1-gamma)^(beta-beta')
///         / (1 - sigma*(1-gamma))
CriticalValue critical_sigma_exposure(const ModelParams& base, int new_delay);

/// The sigma that keeps expected loss unchanged when the detection delay
/// changes; independent of the false positive rate:
///   sigma_L = b / (1 + b*(1-gamma-rho)),
///   b = 1/(gamma+rho) - (1-gamma-rho)^(beta-beta')
///         * [1/(gamma+rho) - sigma/(1-sigma*(1-gamma-rho))]
CriticalValue critical_sigma_loss(const ModelParams& base, int new_delay);

/// Bundles the closed forms for one scenario and population tail ratio.
AnalyticReport analyze(const ModelParams& params, double tail_ratio);

} // namespace depref
