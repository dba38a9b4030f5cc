#include "depref/popularity.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "depref/errors.hpp"

namespace depref {

PopularitySpec PopularitySpec::uniform(std::size_t count, double lo, double hi) {
    PopularitySpec spec;
    spec.kind = Kind::Uniform;
    spec.count = count;
    spec.lo = lo;
    spec.hi = hi;
    return spec;
}

PopularitySpec PopularitySpec::power_law(std::size_t count, double alpha, double x_min) {
    PopularitySpec spec;
    spec.kind = Kind::PowerLaw;
    spec.count = count;
    spec.alpha = alpha;
    spec.x_min = x_min;
    return spec;
}

void PopularitySpec::validate() const {
    if (count < 1) throw SpecError("population size n must be at least 1");
    switch (kind) {
    case Kind::Uniform:
        if (!(lo >= 0.0)) throw SpecError("uniform popularity requires lo >= 0");
        if (!(lo < hi)) throw SpecError("uniform popularity requires lo < hi");
        break;
    case Kind::PowerLaw:
        if (!(alpha > 1.0)) throw SpecError("power-law popularity requires alpha > 1");
        if (!(x_min > 0.0)) throw SpecError("power-law popularity requires x_min > 0");
        break;
    }
}

Population Population::from_weights(std::vector<double> weights) {
    Population population;
    population.tail_ratio = depref::tail_ratio(weights);
    population.weights = std::move(weights);
    double total = 0.0;
    for (double w : population.weights) total += w;
    population.total = total;
    return population;
}

double tail_ratio(std::span<const double> weights) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw SpecError("weights must be nonnegative");
        sum += w;
        sum_sq += w * w;
    }
    if (!(sum > 0.0)) {
        throw EmptyPopulationError("population needs at least one positive weight");
    }
    return sum_sq / (sum * sum);
}

double power_law_quantile(double u, double alpha, double x_min) {
    return x_min * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
}

Population sample(const PopularitySpec& spec, SplitMix64& rng) {
    spec.validate();
    std::vector<double> weights(spec.count);
    switch (spec.kind) {
    case PopularitySpec::Kind::Uniform:
        for (double& w : weights) w = spec.lo + rng.next_double() * (spec.hi - spec.lo);
        break;
    case PopularitySpec::Kind::PowerLaw:
        for (double& w : weights) w = power_law_quantile(rng.next_double(), spec.alpha, spec.x_min);
        break;
    }
    return Population::from_weights(std::move(weights));
}

Population load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open popularity file: " + path);
    std::vector<double> weights;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::istringstream fields(line);
        double value = 0.0;
        std::string trailing;
        if (!(fields >> value) || (fields >> trailing)) {
            std::string token;
            if (!(std::istringstream(line) >> token)) continue; // blank line
            std::ostringstream msg;
            msg << path << ":" << line_number << ": expected one number per line, got '"
                << line << "'";
            throw SpecError(msg.str());
        }
        weights.push_back(value);
    }
    if (weights.empty()) throw EmptyPopulationError("popularity file has no weights: " + path);
    return Population::from_weights(std::move(weights));
}

} // namespace depref
