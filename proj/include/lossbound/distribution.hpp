#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lossbound {

inline constexpr double kProbSumTol = 1e-12;
inline constexpr double kAtomMergeTol = 1e-12;

// Probability vector over a finite alphabet.  Entries are validated at
// construction: nonnegative, summing to 1 within kProbSumTol.
class FiniteDistribution {
public:
    FiniteDistribution() = default;

    explicit FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0)) throw std::invalid_argument("FiniteDistribution: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw std::invalid_argument("FiniteDistribution: probabilities do not sum to 1");
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

struct LossAtom {
    double loss;
    double prob;
};

// Discrete law of a nonnegative loss: atoms sorted by loss value with
// duplicates (within kAtomMergeTol) merged and zero-probability atoms dropped.
class FiniteLossDistribution {
public:
    FiniteLossDistribution() = default;

    explicit FiniteLossDistribution(std::vector<LossAtom> atoms) {
        double sum = 0.0;
        for (const auto& a : atoms) {
            if (!(a.loss >= 0.0)) throw std::invalid_argument("FiniteLossDistribution: negative loss");
            if (!(a.prob >= 0.0)) throw std::invalid_argument("FiniteLossDistribution: negative probability");
            sum += a.prob;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw std::invalid_argument("FiniteLossDistribution: probabilities do not sum to 1");
        std::sort(atoms.begin(), atoms.end(),
                  [](const LossAtom& x, const LossAtom& y) { return x.loss < y.loss; });
        for (const auto& a : atoms) {
            if (!atoms_.empty() && a.loss - atoms_.back().loss <= kAtomMergeTol)
                atoms_.back().prob += a.prob;
            else if (a.prob > 0.0 || atoms_.empty())
                atoms_.push_back(a);
        }
        while (!atoms_.empty() && atoms_.back().prob == 0.0 && atoms_.size() > 1) atoms_.pop_back();
    }

    const std::vector<LossAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double mean() const {
        double m = 0.0;
        for (const auto& a : atoms_) m += a.loss * a.prob;
        return m;
    }

    double max_loss() const { return atoms_.empty() ? 0.0 : atoms_.back().loss; }

private:
    std::vector<LossAtom> atoms_;
};

}  // namespace lossbound
