#pragma once
#include <functional>
#include <string>

#include "lossbound/distribution.hpp"

namespace lossbound {

enum class TransformKind { QuantileIndicator, Hinge, ClippedMean, Laplace, Custom };

// Whether phi is monotone in the loss; decides which side of a two-sided
// interval turns into a one-sided converse bound.
enum class Monotonicity { Nondecreasing, Nonincreasing, Unknown };

std::string to_string(TransformKind kind);

// A bounded transform phi of the loss, mapping [0, inf) into [0,1].
//
// The quantile indicator uses the strict event {loss < delta}; the boundary
// loss == delta maps to 0.  This matters for discrete losses.
class TransformSpec {
public:
    static TransformSpec quantile_indicator(double delta);
    static TransformSpec hinge(double t, double l_max);  // (l - t)_+ / l_max
    static TransformSpec clipped_mean(double tau);       // min(l / tau, 1)
    static TransformSpec laplace(double lambda);         // exp(-lambda * l)
    // phi must be side-effect-free and map into [0,1]; a runtime guard rejects
    // out-of-range values.
    static TransformSpec custom(std::function<double(double)> phi, Monotonicity direction);

    TransformKind kind() const { return kind_; }
    Monotonicity direction() const { return direction_; }
    double delta() const { return a_; }
    double t() const { return a_; }
    double l_max() const { return b_; }
    double tau() const { return a_; }
    double lambda() const { return a_; }

    double evaluate(double loss) const;

    std::string describe() const;

private:
    TransformSpec(TransformKind kind, Monotonicity dir, double a, double b)
        : kind_(kind), direction_(dir), a_(a), b_(b) {}

    TransformKind kind_;
    Monotonicity direction_;
    double a_ = 0.0;  // delta / t / tau / lambda, by kind
    double b_ = 0.0;  // l_max for the hinge
    std::function<double(double)> phi_;
};

// E[phi(L)] under a finite loss law, by direct summation.
double expected_transform(const TransformSpec& spec, const FiniteLossDistribution& dist);

}  // namespace lossbound
