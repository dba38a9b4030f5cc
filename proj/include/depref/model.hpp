#pragma once

#include <array>
#include <cstdint>

#include "depref/rng.hpp"

namespace depref {

/// The three states a website can occupy.
enum class SiteState : std::uint8_t {
    Uninfected = 0, // clean and unflagged
    Infected = 1,   // actually compromised
    Flagged = 2,    // clean but classified as infected (false positive)
};

inline constexpr int kNumStates = 3;

/// Per-step rates of one scenario plus the intervention knobs.
///
/// All rates are probabilities per time step. `detection_delay` is the number
/// of steps a site stays in Infected/Flagged before the intervention engages;
/// `depreferencing` is the per-step traffic retention factor applied after
/// that (0 = blacklisting, 1 = no intervention).
struct ModelParams {
    double infection_rate = 0.01;      // uninfected or flagged site becomes infected
    double recovery_rate = 0.1;        // infected or flagged site is cleaned/cleared
    double false_positive_rate = 0.0;  // uninfected site is wrongly flagged
    int detection_delay = 0;
    double depreferencing = 1.0;
};

/// Throws RangeError / StochasticityError if the rates cannot form a
/// row-stochastic chain. Does not require ergodicity.
void check_rates(const ModelParams& params);

/// True iff the chain restricted to the states reachable from Uninfected is
/// ergodic and the stationary closed forms are well defined. Given valid
/// rates this reduces to: recovery_rate > 0 and not the degenerate
/// period-2 triple (f=1, gamma=1, rho=0).
bool is_ergodic(const ModelParams& params);

/// Full parameter validation: rates plus the ergodicity guard.
/// Returns its argument unchanged on success.
const ModelParams& validate(const ModelParams& params);

/// Markov state of a single server. `duration` counts the steps spent
/// consecutively in the current state and is 0 on the step the state is
/// entered.
struct ServerState {
    SiteState state = SiteState::Uninfected;
    int duration = 0;

    bool operator==(const ServerState&) const = default;
};

/// Row-stochastic 3x3 matrix of per-step transition probabilities in
/// (Uninfected, Infected, Flagged) row/column order.
struct TransitionMatrix {
    std::array<std::array<double, 3>, 3> p{};

    const std::array<double, 3>& row(SiteState s) const {
        return p[static_cast<std::size_t>(s)];
    }
};

/// Builds the chain:
///   Uninfected -> (1-rho-f, rho, f)
///   Infected   -> (gamma, 1-gamma, 0)
///   Flagged    -> (gamma, rho, 1-gamma-rho)
/// Requires valid rates only.
TransitionMatrix transition_matrix(const ModelParams& params);

/// Long-run state probabilities of the chain.
struct StationaryDistribution {
    double infected = 0.0;
    double uninfected = 0.0;
    double flagged = 0.0;
};

/// Closed-form stationary distribution:
///   Pr[I] = rho / (rho + gamma)
///   Pr[N] = gamma / (f + rho + gamma)
///   Pr[F] = f * gamma / ((gamma + rho) * (f + gamma + rho))
/// Throws ErgodicityError for non-ergodic parameter sets.
StationaryDistribution stationary_distribution(const ModelParams& params);

/// Pr[site has been infected for exactly `steps_in_state` steps]:
///   rho * (1 - Pr[I]) * (1 - gamma)^x
double infected_duration_pmf(const ModelParams& params, int steps_in_state);

/// Pr[site has been falsely flagged for exactly `steps_in_state` steps]:
///   f * Pr[N] * (1 - (gamma + rho))^x
double false_duration_pmf(const ModelParams& params, int steps_in_state);

/// Samples the next state from the matrix row of the current state.
/// Consumes exactly one uniform draw. Duration resets to 0 on a state
/// change and increments by 1 otherwise.
ServerState step_server(const ServerState& current, const TransitionMatrix& matrix,
                        SplitMix64& rng);

/// Convenience overload building the matrix from params.
ServerState step_server(const ServerState& current, const ModelParams& params,
                        SplitMix64& rng);

} // namespace depref
