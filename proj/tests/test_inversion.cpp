#include <cmath>
#include <random>

#include "doctest.h"
#include "lossbound/inversion.hpp"

using namespace lossbound;

namespace {
const DivergenceSpec kKL(DivergenceKind::KL);
const DivergenceSpec kTV(DivergenceKind::TotalVariation);
const DivergenceSpec kChi2(DivergenceKind::ChiSquared);
const DivergenceSpec kHel(DivergenceKind::SquaredHellinger);
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("KL ball at the closed-form budget") {
    // KL(Bern(0.75) || Bern(0.25)) = 0.5 ln 3, so the upper endpoint at that
    // budget is 0.75; the lower endpoint clamps to 0 because
    // KL(Bern(0) || Bern(0.25)) = ln(4/3) is below the budget.
    const double budget = 0.5 * std::log(3.0);
    const auto ball = invert_ball(kKL, 0.25, budget, 1e-10);
    CHECK(ball.upper == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(ball.lower == 0.0);
}

TEST_CASE("zero and infinite budgets degenerate") {
    const auto pinch = invert_ball(kChi2, 0.4, 0.0);
    CHECK(pinch.lower == 0.4);
    CHECK(pinch.upper == 0.4);
    const auto dust = invert_ball(kKL, 0.4, 5e-13);
    CHECK(dust.lower == 0.4);
    CHECK(dust.upper == 0.4);
    const auto full = invert_ball(kKL, 0.5, kInf);
    CHECK(full.lower == 0.0);
    CHECK(full.upper == 1.0);
}

TEST_CASE("invalid arguments throw") {
    CHECK_THROWS_AS(invert_ball(kKL, 1.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(invert_ball(kKL, 0.5, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(invert_ball(kKL, 0.5, -1.0), std::invalid_argument);
}

TEST_CASE("degenerate KL reference collapses one side") {
    // From Bern(0), any a > 0 has infinite KL divergence: the ball is {0}.
    const auto at_zero = invert_ball(kKL, 0.0, 1.0);
    CHECK(at_zero.lower == 0.0);
    CHECK(at_zero.upper == 0.0);
    const auto at_one = invert_ball(kKL, 1.0, 1.0);
    CHECK(at_one.lower == 1.0);
    CHECK(at_one.upper == 1.0);
    // TV stays finite at the boundary, so the ball has real width there.
    const auto tv = invert_ball(kTV, 0.0, 0.25);
    CHECK(tv.upper == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("round trip: divergence at interior endpoints returns the budget") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> b_draw(0.15, 0.85);
    std::uniform_real_distribution<double> budget_draw(0.005, 0.2);
    for (const auto* spec : {&kKL, &kTV, &kChi2, &kHel}) {
        for (int i = 0; i < 100; ++i) {
            const double b = b_draw(rng);
            const double budget = budget_draw(rng);
            const auto ball = invert_ball(*spec, b, budget, 1e-12);
            if (ball.upper < 1.0)
                CHECK(bernoulli_divergence(*spec, ball.upper, b) ==
                      doctest::Approx(budget).epsilon(1e-7));
            if (ball.lower > 0.0)
                CHECK(bernoulli_divergence(*spec, ball.lower, b) ==
                      doctest::Approx(budget).epsilon(1e-7));
            CHECK(ball.lower <= b);
            CHECK(ball.upper >= b);
        }
    }
}

TEST_CASE("interval nesting in the budget") {
    for (const auto* spec : {&kKL, &kTV, &kChi2, &kHel})
        for (double b : {0.2, 0.5, 0.8}) {
            double prev_lower = b, prev_upper = b;
            for (double budget : {0.01, 0.05, 0.1, 0.3, 0.8}) {
                const auto ball = invert_ball(*spec, b, budget);
                CHECK(ball.lower <= prev_lower + 1e-12);
                CHECK(ball.upper >= prev_upper - 1e-12);
                prev_lower = ball.lower;
                prev_upper = ball.upper;
            }
        }
}

TEST_CASE("KL endpoints respect the Pinsker envelope") {
    for (double b = 0.05; b < 1.0; b += 0.05)
        for (double budget : {0.001, 0.01, 0.1, 0.5, 1.5}) {
            const auto ball = invert_ball(kKL, b, budget);
            const double radius = std::sqrt(0.5 * budget);
            CHECK(ball.lower >= std::max(0.0, b - radius) - 1e-15);
            CHECK(ball.upper <= std::min(1.0, b + radius) + 1e-15);
        }
}

TEST_CASE("calibration threshold orientation") {
    CHECK(calibration_threshold(kKL, 0.75, 0.25) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
    CHECK(calibration_threshold(kKL, 0.2, 0.6) == 0.0);
    CHECK(calibration_threshold(kTV, 0.2, 0.6) == 0.0);
    CHECK(calibration_threshold(kKL, 0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(calibration_threshold(kKL, -0.1, 0.5), std::invalid_argument);
}

TEST_CASE("quantile threshold is nonincreasing in delta") {
    for (const auto* spec : {&kKL, &kTV, &kChi2, &kHel})
        for (double p : {0.1, 0.3, 0.6}) {
            double prev = kInf;
            for (double delta = 0.0; delta <= 1.0 - p + 1e-9; delta += 0.02) {
                const double cur = threshold_for_quantile(*spec, delta, p);
                if (!std::isinf(prev)) CHECK(cur <= prev + 1e-12);
                prev = cur;
            }
        }
}
