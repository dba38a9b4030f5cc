#include <doctest.h>

#include <cmath>
#include <vector>

#include "depref/analytics.hpp"
#include "depref/errors.hpp"
#include "oracles.hpp"

using namespace depref;

namespace {

ModelParams params(double rho, double gamma, double f, int beta, double sigma) {
    return ModelParams{rho, gamma, f, beta, sigma};
}

ModelParams random_params(SplitMix64& rng) {
    while (true) {
        ModelParams p;
        p.infection_rate = 0.005 + rng.next_double() * 0.4;
        p.recovery_rate = 0.02 + rng.next_double() * 0.6;
        p.false_positive_rate = 0.01 + rng.next_double() * 0.5;
        p.detection_delay = static_cast<int>(rng.next_u64() % 16);
        p.depreferencing = rng.next_double();
        if (p.infection_rate + p.false_positive_rate <= 1.0 &&
            p.infection_rate + p.recovery_rate <= 1.0) {
            return p;
        }
    }
}

} // namespace

TEST_CASE("expected exposure matches the worked examples") {
    // No intervention collapses to the stationary infected mass.
    for (int beta : {0, 3, 17}) {
        CHECK(expected_exposure(params(0.01, 0.1, 0.0, beta, 1.0)) ==
              doctest::Approx(0.09090909090909091).epsilon(1e-14));
    }
    CHECK(expected_exposure(params(0.01, 0.1, 0.0, 0, 0.0)) == 0.0);
    CHECK(expected_exposure(params(0.01, 0.1, 0.0, 0, 0.9)) ==
          doctest::Approx(0.043062200956937816).epsilon(1e-14));
    CHECK(expected_exposure(params(0.01, 0.1, 0.0, 10, 0.5)) ==
          doctest::Approx(0.06209269090082645).epsilon(1e-14));
}

TEST_CASE("expected loss matches the worked examples") {
    CHECK(expected_loss(params(0.01, 0.1, 0.05, 7, 1.0)) == 0.0);
    // Immediate blacklisting loses exactly the stationary flagged mass.
    const ModelParams immediate = params(0.01, 0.1, 0.05, 0, 0.0);
    CHECK(expected_loss(immediate) ==
          doctest::Approx(stationary_distribution(immediate).flagged).epsilon(1e-13));
    CHECK(expected_loss(params(0.01, 0.1, 0.05, 5, 0.5)) ==
          doctest::Approx(0.14291716444000824).epsilon(1e-14));
    CHECK(expected_loss(params(0.01, 0.1, 0.0, 5, 0.5)) == 0.0);
}

TEST_CASE("per site scaling recovers weighted expectations") {
    CHECK(per_site_scaling(0.0, 0.7) == 0.0);
    CHECK(per_site_scaling(1.0, 0.0909) == 0.0909);
    CHECK(per_site_scaling(250.0, 0.0620927) == doctest::Approx(15.523175).epsilon(1e-12));
    CHECK_THROWS_AS(per_site_scaling(-1.0, 0.5), RangeError);
}

TEST_CASE("exposure and loss closed forms equal the series oracle") {
    SplitMix64 rng(321);
    for (int trial = 0; trial < 60; ++trial) {
        const ModelParams p = random_params(rng);
        CHECK(expected_exposure(p) ==
              doctest::Approx(oracles::exposure_series(p)).epsilon(1e-10));
        CHECK(expected_loss(p) == doctest::Approx(oracles::loss_series(p)).epsilon(1e-10));
    }
}

TEST_CASE("sigma=0 closed forms equal the truncated geometric sums") {
    SplitMix64 rng(654);
    for (int trial = 0; trial < 30; ++trial) {
        ModelParams p = random_params(rng);
        p.depreferencing = 0.0;
        // With blacklisting the exposure series is just the first beta pmf terms.
        double truncated = 0.0;
        for (int x = 0; x < p.detection_delay; ++x) truncated += infected_duration_pmf(p, x);
        CHECK(expected_exposure(p) == doctest::Approx(truncated).epsilon(1e-12));
    }
}

TEST_CASE("exposure is monotone in sigma and beta, loss is antitone") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        ModelParams p = random_params(rng);
        double previous_exposure = -1.0;
        double previous_loss = 2.0;
        for (double sigma : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
            p.depreferencing = sigma;
            const double exposure = expected_exposure(p);
            const double loss = expected_loss(p);
            CHECK(exposure >= previous_exposure);
            CHECK(loss <= previous_loss);
            previous_exposure = exposure;
            previous_loss = loss;
        }
        previous_exposure = -1.0;
        previous_loss = 2.0;
        p.depreferencing = 0.35;
        for (int beta : {0, 1, 2, 4, 8, 16, 32}) {
            p.detection_delay = beta;
            const double exposure = expected_exposure(p);
            const double loss = expected_loss(p);
            CHECK(exposure >= previous_exposure);
            CHECK(loss <= previous_loss);
            previous_exposure = exposure;
            previous_loss = loss;
        }
    }
}

TEST_CASE("exposure approaches the no-intervention mass for large beta") {
    const ModelParams p = params(0.01, 0.1, 0.0, 200, 0.0);
    const double ceiling = 0.09090909090909091;
    CHECK(expected_exposure(p) == doctest::Approx(ceiling).epsilon(1e-9));
    CHECK(expected_exposure(p) <= ceiling);
}

TEST_CASE("loss saturates in f as f/(f+gamma+rho)") {
    const double gamma_rho = 0.11;
    auto f_factor = [&](double f) { return f / (f + gamma_rho); };

    // The closed form depends on f only through this factor.
    const double at_02 = expected_loss(params(0.01, 0.1, 0.2, 5, 0.5));
    const double at_05 = expected_loss(params(0.01, 0.1, 0.5, 5, 0.5));
    CHECK(at_02 / at_05 == doctest::Approx(f_factor(0.2) / f_factor(0.5)).epsilon(1e-12));

    // Saturation ratio against the formal f=1 evaluation.
    CHECK(f_factor(0.2) / f_factor(1.0) == doctest::Approx(0.7161290322580645).epsilon(1e-13));
    const double extrapolated_at_1 = at_05 * f_factor(1.0) / f_factor(0.5);
    CHECK(at_02 / extrapolated_at_1 == doctest::Approx(0.7161290322580645).epsilon(1e-12));

    // Monotone increasing on the valid grid.
    double previous = -1.0;
    for (double f : {0.0, 0.1, 0.3, 0.6, 0.9, 0.99}) {
        const double loss = expected_loss(params(0.01, 0.1, f, 5, 0.5));
        CHECK(loss > previous);
        previous = loss;
    }
}

TEST_CASE("variance of exposure matches the worked examples") {
    // sigma = 1 reduces to the Bernoulli variance of the infected indicator.
    const double tail = 0.00133333;
    CHECK(variance_exposure(params(0.01, 0.1, 0.0, 10, 1.0), tail) ==
          doctest::Approx(1.1019256198347109e-4).epsilon(1e-12));
    CHECK(variance_exposure(params(0.01, 0.1, 0.0, 0, 0.0), 0.5) == 0.0);

    // Bracket equals E[X(beta, sigma^2)] - E[X(beta, sigma)]^2.
    const ModelParams p = params(0.01, 0.1, 0.0, 10, 0.5);
    const ModelParams squared = params(0.01, 0.1, 0.0, 10, 0.25);
    CHECK(variance_exposure(p, 1.0) ==
          doctest::Approx(expected_exposure(squared) -
                          expected_exposure(p) * expected_exposure(p))
              .epsilon(1e-14));
}

TEST_CASE("variance of loss vanishes when loss does") {
    CHECK(variance_loss(params(0.01, 0.1, 0.05, 5, 1.0), 0.3) == 0.0);
    CHECK(variance_loss(params(0.01, 0.1, 0.0, 5, 0.5), 0.3) == 0.0);
    // Nonnegative across the random grid.
    SplitMix64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const ModelParams p = random_params(rng);
        CHECK(variance_loss(p, 0.01) >= 0.0);
        CHECK(variance_exposure(p, 0.01) >= 0.0);
    }
}

TEST_CASE("variance rejects bad tail ratios") {
    const ModelParams p = params(0.01, 0.1, 0.05, 5, 0.5);
    CHECK_THROWS_AS(variance_exposure(p, 0.0), RangeError);
    CHECK_THROWS_AS(variance_loss(p, 1.5), RangeError);
}

TEST_CASE("sigma solver for exposure round-trips") {
    const ModelParams base = params(0.01, 0.1, 0.0, 10, 0.5);

    const CriticalValue at_lowest = sigma_for_exposure(base, expected_exposure(params(0.01, 0.1, 0.0, 10, 0.0)));
    CHECK(at_lowest.feasible);
    CHECK(at_lowest.sigma == doctest::Approx(0.0));

    const CriticalValue solved = sigma_for_exposure(base, 0.06209269090082645);
    CHECK(solved.feasible);
    CHECK(solved.sigma == doctest::Approx(0.5).epsilon(1e-12));

    // Full exposure needs no intervention: outside the attainable range.
    const CriticalValue at_ceiling = sigma_for_exposure(base, 0.09090909090909091);
    CHECK_FALSE(at_ceiling.feasible);

    SplitMix64 rng(2219);
    for (int trial = 0; trial < 30; ++trial) {
        ModelParams p = random_params(rng);
        for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            p.depreferencing = sigma;
            const CriticalValue back = sigma_for_exposure(p, expected_exposure(p));
            CHECK(back.feasible);
            CHECK(back.sigma == doctest::Approx(sigma).epsilon(1e-9));
        }
    }
}

TEST_CASE("sigma solver for loss round-trips") {
    const ModelParams base = params(0.01, 0.1, 0.05, 5, 0.5);

    const CriticalValue no_loss = sigma_for_loss(base, 0.0);
    CHECK(no_loss.feasible);
    CHECK(no_loss.sigma == doctest::Approx(1.0).epsilon(1e-12));

    const CriticalValue solved = sigma_for_loss(base, 0.14291716444000824);
    CHECK(solved.feasible);
    CHECK(solved.sigma == doctest::Approx(0.5).epsilon(1e-12));

    const double max_loss = expected_loss(params(0.01, 0.1, 0.05, 5, 0.0));
    const CriticalValue at_max = sigma_for_loss(base, max_loss);
    CHECK(at_max.feasible);
    CHECK(at_max.sigma == doctest::Approx(0.0));

    SplitMix64 rng(3141);
    for (int trial = 0; trial < 30; ++trial) {
        ModelParams p = random_params(rng);
        for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            p.depreferencing = sigma;
            const CriticalValue back = sigma_for_loss(p, expected_loss(p));
            CHECK(back.feasible);
            CHECK(back.sigma == doctest::Approx(sigma).epsilon(1e-9));
        }
    }
}

TEST_CASE("solver error paths") {
    CHECK_THROWS_AS(sigma_for_exposure(params(0.0, 0.1, 0.0, 5, 0.5), 0.01), DegenerateError);
    CHECK_THROWS_AS(sigma_for_loss(params(0.01, 0.1, 0.0, 5, 0.5), 0.01), DegenerateError);
    // gamma = 0.5, beta = 1, target 0 makes Eq-19's denominator exactly zero.
    CHECK_THROWS_AS(sigma_for_exposure(params(0.25, 0.5, 0.0, 1, 0.5), 0.0), DenominatorError);
    CHECK_THROWS_AS(expected_exposure(params(0.01, 0.0, 0.0, 5, 1.0)), SingularityError);
    CHECK_THROWS_AS(expected_exposure(params(0.0, 0.0, 0.0, 5, 0.5)), DegenerateError);
    CHECK_THROWS_AS(expected_loss(params(0.0, 0.0, 0.1, 5, 0.5)), DegenerateError);
}

TEST_CASE("critical sigma for exposure matches the worked example") {
    const ModelParams base = params(0.01, 0.1, 0.0, 10, 0.5);

    const CriticalValue same = critical_sigma_exposure(base, 10);
    CHECK(same.feasible);
    CHECK(same.sigma == doctest::Approx(0.5).epsilon(1e-14));

    const CriticalValue tighter = critical_sigma_exposure(base, 9);
    CHECK(tighter.feasible);
    CHECK(tighter.sigma == doctest::Approx(0.689655172413793).epsilon(1e-12));
    ModelParams moved = base;
    moved.detection_delay = 9;
    moved.depreferencing = tighter.sigma;
    CHECK(expected_exposure(moved) ==
          doctest::Approx(expected_exposure(base)).epsilon(1e-13));

    const CriticalValue slower = critical_sigma_exposure(base, 11);
    CHECK_FALSE(slower.feasible);
    CHECK(slower.sigma == doctest::Approx(-0.1111111111111111).epsilon(1e-9));
}

TEST_CASE("critical sigma for loss matches the worked example and ignores f") {
    const ModelParams base = params(0.01, 0.1, 0.05, 10, 0.5);

    const CriticalValue same = critical_sigma_loss(base, 10);
    CHECK(same.feasible);
    CHECK(same.sigma == doctest::Approx(0.5).epsilon(1e-14));

    const CriticalValue tighter = critical_sigma_loss(base, 9);
    CHECK(tighter.feasible);
    CHECK(tighter.sigma == doctest::Approx(0.6920415224913493).epsilon(1e-12));
    for (double f : {0.05, 0.2}) {
        ModelParams before = base;
        before.false_positive_rate = f;
        ModelParams after = before;
        after.detection_delay = 9;
        after.depreferencing = tighter.sigma;
        CHECK(expected_loss(after) == doctest::Approx(expected_loss(before)).epsilon(1e-12));
    }

    CriticalValue reference = critical_sigma_loss(base, 7);
    for (double f : {0.01, 0.05, 0.2, 0.5}) {
        ModelParams varied = base;
        varied.false_positive_rate = f;
        const CriticalValue value = critical_sigma_loss(varied, 7);
        CHECK(value.sigma == doctest::Approx(reference.sigma).epsilon(1e-13));
        CHECK(std::abs(value.sigma - reference.sigma) <= 1e-12);
    }
}

TEST_CASE("feasible critical values reproduce the base outcome") {
    SplitMix64 rng(40172);
    for (int trial = 0; trial < 60; ++trial) {
        const ModelParams base = random_params(rng);
        const int new_delay = static_cast<int>(rng.next_u64() % 20);

        const CriticalValue exposure_match = critical_sigma_exposure(base, new_delay);
        if (exposure_match.feasible) {
            ModelParams moved = base;
            moved.detection_delay = new_delay;
            moved.depreferencing = exposure_match.sigma;
            CHECK(expected_exposure(moved) ==
                  doctest::Approx(expected_exposure(base)).epsilon(1e-11));
            CHECK(std::abs(expected_exposure(moved) - expected_exposure(base)) <= 1e-12);
        }

        const CriticalValue loss_match = critical_sigma_loss(base, new_delay);
        if (loss_match.feasible) {
            ModelParams moved = base;
            moved.detection_delay = new_delay;
            moved.depreferencing = loss_match.sigma;
            CHECK(std::abs(expected_loss(moved) - expected_loss(base)) <= 1e-12);
        }
    }
}

TEST_CASE("outcomes stay inside their stationary-mass brackets") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams p = random_params(rng);
        const auto stationary = stationary_distribution(p);
        const double exposure = expected_exposure(p);
        const double loss = expected_loss(p);
        CHECK(exposure >= 0.0);
        CHECK(exposure <= stationary.infected * (1.0 + 1e-12));
        CHECK(loss >= 0.0);
        CHECK(loss <= stationary.flagged * (1.0 + 1e-12));
    }
}

TEST_CASE("analyze bundles the closed forms") {
    const AnalyticReport report = analyze(params(0.01, 0.1, 0.05, 10, 0.5), 0.001);
    CHECK(report.expected_exposure == doctest::Approx(0.06209269090082645).epsilon(1e-13));
    CHECK(report.stationary.uninfected == doctest::Approx(0.625).epsilon(1e-13));
    CHECK(report.var_exposure ==
          doctest::Approx(variance_exposure(report.params, 0.001)).epsilon(1e-13));
    CHECK(report.tail_ratio == 0.001);
}
