#include "lossbound/divergence.hpp"

#include <cmath>
#include <stdexcept>

namespace lossbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-atom contribution to sum_x q f(p/q) for the named families, written
// to avoid catastrophic cancellation where a direct q*f(p/q) would lose digits.
double atom_term(const DivergenceSpec& spec, double p, double q) {
    switch (spec.kind()) {
        case DivergenceKind::KL:
            if (p == 0.0) return 0.0;
            if (q == 0.0) return kInf;
            return p * std::log(p / q);
        case DivergenceKind::TotalVariation:
            return 0.5 * std::abs(p - q);
        case DivergenceKind::ChiSquared: {
            if (p == 0.0) return q;  // q * (0-1)^2
            if (q == 0.0) return kInf;
            const double d = p - q;
            return d * d / q;
        }
        case DivergenceKind::SquaredHellinger: {
            const double d = std::sqrt(p) - std::sqrt(q);
            return d * d;
        }
        case DivergenceKind::Custom: {
            const auto& g = spec.generator();
            if (p == 0.0 && q == 0.0) return 0.0;
            if (q == 0.0) return std::isinf(g.slope_at_infinity) ? kInf : p * g.slope_at_infinity;
            if (p == 0.0) return q * g.f_at_zero;
            return q * g.f(p / q);
        }
    }
    throw std::logic_error("unreachable divergence kind");
}

void validate_generator(const CustomGenerator& g) {
    if (!g.f) throw std::invalid_argument("custom generator: missing function");
    if (g.f(1.0) != 0.0) throw std::invalid_argument("custom generator: f(1) must be 0");
    // Convexity on a grid of triples x < y < z, allowing numeric slack.
    const double grid[] = {1e-6, 0.01, 0.1, 0.5, 0.9, 1.0, 1.5, 2.0, 5.0, 20.0, 100.0};
    const int n = sizeof(grid) / sizeof(grid[0]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const double x = grid[i], y = grid[j], z = grid[k];
                const double chord = ((z - y) * g.f(x) + (y - x) * g.f(z)) / (z - x);
                if (g.f(y) > chord + 1e-9 * (1.0 + std::abs(chord)))
                    throw std::invalid_argument("custom generator: convexity violated");
            }
}

}  // namespace

std::string to_string(DivergenceKind kind) {
    switch (kind) {
        case DivergenceKind::KL: return "kl";
        case DivergenceKind::TotalVariation: return "tv";
        case DivergenceKind::ChiSquared: return "chi2";
        case DivergenceKind::SquaredHellinger: return "hellinger2";
        case DivergenceKind::Custom: return "custom";
    }
    return "?";
}

DivergenceSpec::DivergenceSpec(DivergenceKind kind) : kind_(kind) {
    if (kind == DivergenceKind::Custom)
        throw std::invalid_argument("custom divergence requires a generator");
}

DivergenceSpec::DivergenceSpec(CustomGenerator generator)
    : kind_(DivergenceKind::Custom), generator_(std::move(generator)) {
    validate_generator(generator_);
}

double f_divergence(const DivergenceSpec& spec, const FiniteDistribution& p,
                    const FiniteDistribution& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("f_divergence: length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double term = atom_term(spec, p[i], q[i]);
        if (std::isinf(term)) return kInf;
        total += term;
    }
    // Rounding can push the identity case a hair below zero.
    return total < 0.0 ? 0.0 : total;
}

double bernoulli_divergence(const DivergenceSpec& spec, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
        throw std::invalid_argument("bernoulli_divergence: means must lie in [0,1]");
    if (a == b) return 0.0;
    const double t0 = atom_term(spec, a, b);
    if (std::isinf(t0)) return kInf;
    const double t1 = atom_term(spec, 1.0 - a, 1.0 - b);
    if (std::isinf(t1)) return kInf;
    const double total = t0 + t1;
    return total < 0.0 ? 0.0 : total;
}

}  // namespace lossbound
