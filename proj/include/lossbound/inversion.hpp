#pragma once
#include "lossbound/divergence.hpp"

namespace lossbound {

inline constexpr double kDefaultMeanTol = 1e-10;
inline constexpr double kZeroBudgetTol = 1e-12;

// Sublevel interval of a |-> D_f(Bern(a) || Bern(b)) at level `budget`.
// `lower` and `upper` bracket the true endpoints from the outside, so the
// reported interval always contains the exact sublevel interval; each is
// within `tolerance` of the true endpoint on the mean axis.
struct BernoulliBall {
    DivergenceSpec spec;
    double b = 0.0;
    double budget = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    double tolerance = kDefaultMeanTol;
};

// Bisection on each half-interval [0,b] and [b,1], using the monotonicity of
// the Bernoulli divergence away from b.  Budgets within kZeroBudgetTol of 0
// collapse the ball to {b}; an infinite budget returns [0,1].  For KL the
// endpoints are additionally clamped to the Pinsker envelope
// [b - sqrt(B/2), b + sqrt(B/2)], which is sound and keeps the KL ball inside
// the envelope exactly.
BernoulliBall invert_ball(const DivergenceSpec& spec, double b, double budget,
                          double tolerance = kDefaultMeanTol);

// d_{f,theta}(p): D_f(Bern(theta) || Bern(p)) when theta >= p, else 0.
double calibration_threshold(const DivergenceSpec& spec, double theta, double p);

// Quantile orientation: d_{f,delta}(p) with theta = 1 - delta.
double threshold_for_quantile(const DivergenceSpec& spec, double delta, double p);

}  // namespace lossbound
