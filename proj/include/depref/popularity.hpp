#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "depref/rng.hpp"

namespace depref {

/// How to draw per-site popularity weights.
struct PopularitySpec {
    enum class Kind { Uniform, PowerLaw };

    Kind kind = Kind::Uniform;
    std::size_t count = 1000; // number of sites

    // Uniform(lo, hi)
    double lo = 0.0;
    double hi = 1.0;

    // Power law with density ~ x^(-alpha) for x >= x_min; alpha is the
    // exponent magnitude (1 < alpha). alpha in (1, 2) has infinite mean.
    double alpha = 1.4;
    double x_min = 1.0;

    static PopularitySpec uniform(std::size_t count, double lo = 0.0, double hi = 1.0);
    static PopularitySpec power_law(std::size_t count, double alpha = 1.4, double x_min = 1.0);

    /// Throws SpecError if the spec is malformed.
    void validate() const;
};

/// A sampled (or loaded) population of site weights.
struct Population {
    std::vector<double> weights;
    double total = 0.0;      // sum of weights
    double tail_ratio = 0.0; // sum(w^2) / sum(w)^2

    static Population from_weights(std::vector<double> weights);
};

/// sum(w^2)/sum(w)^2; in [1/n, 1] and scale invariant. Throws
/// EmptyPopulationError unless at least one weight is positive.
double tail_ratio(std::span<const double> weights);

/// Inverse CDF of the power law: x_min * (1-u)^(-1/(alpha-1)), u in [0, 1).
double power_law_quantile(double u, double alpha, double x_min);

/// Draws spec.count independent weights from the spec's distribution.
Population sample(const PopularitySpec& spec, SplitMix64& rng);

/// Loads weights from a text file, one nonnegative decimal per line.
Population load_weights(const std::string& path);

} // namespace depref
