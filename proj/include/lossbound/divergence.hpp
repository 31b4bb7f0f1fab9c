#pragma once
#include <functional>
#include <limits>
#include <string>

#include "lossbound/distribution.hpp"

namespace lossbound {

enum class DivergenceKind { KL, TotalVariation, ChiSquared, SquaredHellinger, Custom };

std::string to_string(DivergenceKind kind);

// Convex generator for a custom f-divergence.  f must satisfy f(1)=0; its
// value at 0 and its slope at infinity (lim f(t)/t) are declared explicitly
// rather than estimated, since numeric limit-taking at the domain boundary is
// unreliable.  Both invariants are checked at construction.
struct CustomGenerator {
    std::function<double(double)> f;
    double f_at_zero = 0.0;
    double slope_at_infinity = std::numeric_limits<double>::infinity();
};

class DivergenceSpec {
public:
    DivergenceSpec(DivergenceKind kind = DivergenceKind::KL);  // named families only
    DivergenceSpec(CustomGenerator generator);                 // validates the generator

    DivergenceKind kind() const { return kind_; }
    const CustomGenerator& generator() const { return generator_; }

private:
    DivergenceKind kind_;
    CustomGenerator generator_;
};

// D_f(P||Q) = sum_x q(x) f(p(x)/q(x)), with the conventions 0*f(0/0) = 0 and,
// for q(x)=0 < p(x), a contribution of p(x) times the slope of f at infinity.
// Returns +infinity when that slope is infinite (e.g. KL without absolute
// continuity).
double f_divergence(const DivergenceSpec& spec, const FiniteDistribution& p,
                    const FiniteDistribution& q);

// D_f(Bern(a) || Bern(b)); for total variation this is |a - b|.
double bernoulli_divergence(const DivergenceSpec& spec, double a, double b);

}  // namespace lossbound
