#pragma once

#include <stdexcept>
#include <string>

namespace depref {

/// Base class for all model and configuration errors raised by this library.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A probability or count is outside its admissible range.
class RangeError : public ModelError {
public:
    using ModelError::ModelError;
};

/// Per-state exit probabilities exceed 1, so no row-stochastic chain exists.
class StochasticityError : public ModelError {
public:
    using ModelError::ModelError;
};

/// The chain has absorbing or periodic structure and no usable stationary
/// distribution (e.g. f=1, gamma=1, rho=0).
class ErgodicityError : public ModelError {
public:
    using ModelError::ModelError;
};

/// A closed form hits a vanishing geometric-series denominator.
class SingularityError : public ModelError {
public:
    using ModelError::ModelError;
};

/// Rates are too degenerate for the analytic forms (gamma + rho ~ 0).
class DegenerateError : public ModelError {
public:
    using ModelError::ModelError;
};

/// A solver denominator vanishes for the requested target.
class DenominatorError : public ModelError {
public:
    using ModelError::ModelError;
};

/// A popularity specification is malformed.
class SpecError : public ModelError {
public:
    using ModelError::ModelError;
};

/// A population has no positive weight.
class EmptyPopulationError : public ModelError {
public:
    using ModelError::ModelError;
};

} // namespace depref
