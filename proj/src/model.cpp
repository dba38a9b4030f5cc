#include "depref/model.hpp"

#include <cmath>
#include <sstream>

#include "depref/errors.hpp"

namespace depref {

namespace {

void require_probability(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must be a probability in [0, 1], got " << value;
        throw RangeError(msg.str());
    }
}

} // namespace

void check_rates(const ModelParams& params) {
    require_probability(params.infection_rate, "rho");
    require_probability(params.recovery_rate, "gamma");
    require_probability(params.false_positive_rate, "f");
    require_probability(params.depreferencing, "sigma");
    if (params.detection_delay < 0) {
        throw RangeError("beta must be a nonnegative integer, got " +
                         std::to_string(params.detection_delay));
    }
    if (params.infection_rate + params.false_positive_rate > 1.0) {
        std::ostringstream msg;
        msg << "rho + f = " << params.infection_rate + params.false_positive_rate
            << " exceeds 1; the uninfected state's exit probabilities are not stochastic";
        throw StochasticityError(msg.str());
    }
    if (params.infection_rate + params.recovery_rate > 1.0) {
        std::ostringstream msg;
        msg << "rho + gamma = " << params.infection_rate + params.recovery_rate
            << " exceeds 1; the flagged state's exit probabilities are not stochastic";
        throw StochasticityError(msg.str());
    }
}

bool is_ergodic(const ModelParams& params) {
    // With valid rates, gamma = 0 leaves an absorbing reachable state (or a
    // 0/0 stationary form when nothing moves at all), and the only periodic
    // configuration left is the degenerate N<->F cycle f=1, gamma=1, rho=0.
    if (params.recovery_rate <= 0.0) return false;
    if (params.false_positive_rate == 1.0 && params.recovery_rate == 1.0 &&
        params.infection_rate == 0.0) {
        return false;
    }
    return true;
}

const ModelParams& validate(const ModelParams& params) {
    check_rates(params);
    if (!is_ergodic(params)) {
        throw ErgodicityError(
            "chain is not ergodic: gamma must be positive and (rho=0, gamma=1, f=1) "
            "is a degenerate periodic case");
    }
    return params;
}

TransitionMatrix transition_matrix(const ModelParams& params) {
    check_rates(params);
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    const double f = params.false_positive_rate;
    TransitionMatrix m;
    m.p[0] = {1.0 - rho - f, rho, f};
    m.p[1] = {gamma, 1.0 - gamma, 0.0};
    m.p[2] = {gamma, rho, 1.0 - gamma - rho};
    return m;
}

StationaryDistribution stationary_distribution(const ModelParams& params) {
    validate(params);
    const double rho = params.infection_rate;
    const double gamma = params.recovery_rate;
    const double f = params.false_positive_rate;
    StationaryDistribution d;
    d.infected = rho / (rho + gamma);
    d.uninfected = gamma / (f + rho + gamma);
    d.flagged = f * gamma / ((gamma + rho) * (f + gamma + rho));
    return d;
}

double infected_duration_pmf(const ModelParams& params, int steps_in_state) {
    validate(params);
    if (steps_in_state < 0) throw RangeError("duration must be nonnegative");
    const double p_infected = params.infection_rate / (params.infection_rate + params.recovery_rate);
    return params.infection_rate * (1.0 - p_infected) *
           std::pow(1.0 - params.recovery_rate, steps_in_state);
}

double false_duration_pmf(const ModelParams& params, int steps_in_state) {
    validate(params);
    if (steps_in_state < 0) throw RangeError("duration must be nonnegative");
    const double p_uninfected =
        params.recovery_rate /
        (params.false_positive_rate + params.infection_rate + params.recovery_rate);
    return params.false_positive_rate * p_uninfected *
           std::pow(1.0 - (params.recovery_rate + params.infection_rate), steps_in_state);
}

ServerState step_server(const ServerState& current, const TransitionMatrix& matrix,
                        SplitMix64& rng) {
    const auto& row = matrix.row(current.state);
    const double u = rng.next_double();
    SiteState next;
    if (u < row[0]) {
        next = SiteState::Uninfected;
    } else if (u < row[0] + row[1]) {
        next = SiteState::Infected;
    } else {
        next = SiteState::Flagged;
    }
    if (next == current.state) return ServerState{next, current.duration + 1};
    return ServerState{next, 0};
}

ServerState step_server(const ServerState& current, const ModelParams& params,
                        SplitMix64& rng) {
    return step_server(current, transition_matrix(params), rng);
}

} // namespace depref
