#include "lossbound/oracles.hpp"

#include <stdexcept>

namespace lossbound {

double exact_cvar(const FiniteLossDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("exact_cvar: alpha must lie in (0,1)");
    const double tail_mass = 1.0 - alpha;
    double remaining = tail_mass;
    double acc = 0.0;
    const auto& atoms = dist.atoms();
    for (auto it = atoms.rbegin(); it != atoms.rend() && remaining > 0.0; ++it) {
        const double take = remaining < it->prob ? remaining : it->prob;
        acc += take * it->loss;
        remaining -= take;
    }
    return acc / tail_mass;
}

double exact_tail(const FiniteLossDistribution& dist, double threshold, bool strict) {
    double total = 0.0;
    for (const auto& a : dist.atoms())
        if (strict ? a.loss > threshold : a.loss >= threshold) total += a.prob;
    return total;
}

double exact_expected_hinge(const FiniteLossDistribution& dist, double t) {
    double total = 0.0;
    for (const auto& a : dist.atoms())
        if (a.loss > t) total += a.prob * (a.loss - t);
    return total;
}

double exact_var(const FiniteLossDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("exact_var: alpha must lie in (0,1)");
    double cdf = 0.0;
    for (const auto& a : dist.atoms()) {
        cdf += a.prob;
        if (cdf >= alpha) return a.loss;
    }
    return dist.max_loss();
}

}  // namespace lossbound
