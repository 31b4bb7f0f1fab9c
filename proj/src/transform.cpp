#include "lossbound/transform.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lossbound {

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::QuantileIndicator: return "indicator";
        case TransformKind::Hinge: return "hinge";
        case TransformKind::ClippedMean: return "clipped";
        case TransformKind::Laplace: return "laplace";
        case TransformKind::Custom: return "custom";
    }
    return "?";
}

TransformSpec TransformSpec::quantile_indicator(double delta) {
    return TransformSpec(TransformKind::QuantileIndicator, Monotonicity::Nonincreasing, delta, 0.0);
}

TransformSpec TransformSpec::hinge(double t, double l_max) {
    if (!(t >= 0.0)) throw std::invalid_argument("hinge: t must be nonnegative");
    if (!(l_max > 0.0)) throw std::invalid_argument("hinge: l_max must be positive");
    return TransformSpec(TransformKind::Hinge, Monotonicity::Nondecreasing, t, l_max);
}

TransformSpec TransformSpec::clipped_mean(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("clipped_mean: tau must be positive");
    return TransformSpec(TransformKind::ClippedMean, Monotonicity::Nondecreasing, tau, 0.0);
}

TransformSpec TransformSpec::laplace(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("laplace: lambda must be positive");
    return TransformSpec(TransformKind::Laplace, Monotonicity::Nonincreasing, lambda, 0.0);
}

TransformSpec TransformSpec::custom(std::function<double(double)> phi, Monotonicity direction) {
    if (!phi) throw std::invalid_argument("custom transform: missing function");
    TransformSpec spec(TransformKind::Custom, direction, 0.0, 0.0);
    spec.phi_ = std::move(phi);
    return spec;
}

double TransformSpec::evaluate(double loss) const {
    if (!(loss >= 0.0)) throw std::invalid_argument("evaluate: loss must be nonnegative");
    switch (kind_) {
        case TransformKind::QuantileIndicator:
            return loss < a_ ? 1.0 : 0.0;  // strict by convention
        case TransformKind::Hinge: {
            const double v = (loss - a_) / b_;
            return v <= 0.0 ? 0.0 : (v >= 1.0 ? 1.0 : v);
        }
        case TransformKind::ClippedMean:
            return loss >= a_ ? 1.0 : loss / a_;
        case TransformKind::Laplace:
            return std::exp(-a_ * loss);
        case TransformKind::Custom: {
            const double v = phi_(loss);
            if (!(v >= 0.0 && v <= 1.0))
                throw std::runtime_error("custom transform: value outside [0,1]");
            return v;
        }
    }
    throw std::logic_error("unreachable transform kind");
}

std::string TransformSpec::describe() const {
    std::ostringstream out;
    switch (kind_) {
        case TransformKind::QuantileIndicator: out << "indicator:delta=" << a_; break;
        case TransformKind::Hinge: out << "hinge:t=" << a_ << ",lmax=" << b_; break;
        case TransformKind::ClippedMean: out << "clipped:tau=" << a_; break;
        case TransformKind::Laplace: out << "laplace:lambda=" << a_; break;
        case TransformKind::Custom: out << "custom"; break;
    }
    return out.str();
}

double expected_transform(const TransformSpec& spec, const FiniteLossDistribution& dist) {
    double total = 0.0;
    for (const auto& atom : dist.atoms()) total += atom.prob * spec.evaluate(atom.loss);
    return total < 0.0 ? 0.0 : (total > 1.0 ? 1.0 : total);
}

}  // namespace lossbound
