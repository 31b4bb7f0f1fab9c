#include "lossbound/inversion.hpp"

#include <cmath>
#include <stdexcept>

namespace lossbound {

namespace {

constexpr int kMaxIter = 200;

// Largest a in [b, boundary] with g(a) <= budget, bracketed from outside.
// Precondition: g(boundary) > budget.  Returns the outer bracket end unless
// the divergence there is infinite, in which case the sublevel set on this
// side collapses and the inner end is exact to within tolerance.
double solve_side(const DivergenceSpec& spec, double b, double boundary, double budget,
                  double tolerance) {
    double inner = b;      // g(inner) <= budget
    double outer = boundary;  // g(outer) >  budget
    for (int i = 0; i < kMaxIter && std::abs(outer - inner) > tolerance; ++i) {
        const double mid = 0.5 * (inner + outer);
        if (bernoulli_divergence(spec, mid, b) <= budget)
            inner = mid;
        else
            outer = mid;
    }
    if (std::isinf(bernoulli_divergence(spec, outer, b))) return inner;
    return outer;
}

}  // namespace

BernoulliBall invert_ball(const DivergenceSpec& spec, double b, double budget,
                          double tolerance) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("invert_ball: b must lie in [0,1]");
    if (!(tolerance > 0.0)) throw std::invalid_argument("invert_ball: tolerance must be positive");
    if (!(budget >= 0.0)) throw std::invalid_argument("invert_ball: budget must be nonnegative");

    BernoulliBall ball{spec, b, budget, b, b, tolerance};
    if (budget <= kZeroBudgetTol) {
        ball.budget = 0.0;
        return ball;
    }
    if (std::isinf(budget)) {
        ball.lower = 0.0;
        ball.upper = 1.0;
        return ball;
    }

    ball.upper = (bernoulli_divergence(spec, 1.0, b) <= budget)
                     ? 1.0
                     : solve_side(spec, b, 1.0, budget, tolerance);
    ball.lower = (bernoulli_divergence(spec, 0.0, b) <= budget)
                     ? 0.0
                     : solve_side(spec, b, 0.0, budget, tolerance);

    if (spec.kind() == DivergenceKind::KL) {
        const double radius = std::sqrt(0.5 * budget);
        ball.lower = std::max(ball.lower, std::max(0.0, b - radius));
        ball.upper = std::min(ball.upper, std::min(1.0, b + radius));
    }
    if (ball.lower > b) ball.lower = b;
    if (ball.upper < b) ball.upper = b;
    return ball;
}

double calibration_threshold(const DivergenceSpec& spec, double theta, double p) {
    if (!(theta >= 0.0 && theta <= 1.0) || !(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("calibration_threshold: arguments must lie in [0,1]");
    if (theta < p) return 0.0;
    return bernoulli_divergence(spec, theta, p);
}

double threshold_for_quantile(const DivergenceSpec& spec, double delta, double p) {
    return calibration_threshold(spec, 1.0 - delta, p);
}

}  // namespace lossbound
