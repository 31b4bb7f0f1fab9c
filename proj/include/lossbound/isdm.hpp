#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lossbound/distribution.hpp"
#include "lossbound/divergence.hpp"

namespace lossbound {

// A finite interactive decision-making instance, after fixing the algorithm:
// a prior over models, one observation law per model over a shared finite
// outcome set, and a nonnegative loss matrix capped by l_max.
struct FiniteISDM {
    FiniteDistribution prior;
    std::vector<FiniteDistribution> obs_laws;     // row m = law of the outcome under model m
    std::vector<std::vector<double>> loss;        // loss[m][x]
    double l_max = 0.0;
    std::vector<std::string> model_labels;        // optional
    std::vector<std::string> outcome_labels;      // optional

    std::size_t num_models() const { return prior.size(); }
    std::size_t num_outcomes() const { return obs_laws.empty() ? 0 : obs_laws.front().size(); }

    // Throws std::invalid_argument on shape mismatches or losses outside [0, l_max].
    void validate() const;
};

// E_{m ~ prior} D_f(obs_laws[m] || reference).
double budget(const FiniteISDM& instance, const DivergenceSpec& spec,
              const FiniteDistribution& reference);

// Marginal outcome law under the prior: sum_m prior(m) * obs_laws[m].
FiniteDistribution mixture_reference(const FiniteISDM& instance);

// KL budget against the mixture reference; always finite.
double mutual_information(const FiniteISDM& instance);

// Law of loss(M, X) with M ~ prior and X ~ obs_laws[M].
FiniteLossDistribution prior_predictive_loss(const FiniteISDM& instance);

// Law of loss(M, X) with M ~ prior and X ~ reference, independent.
FiniteLossDistribution reference_loss(const FiniteISDM& instance,
                                      const FiniteDistribution& reference);

// ---------------------------------------------------------------------------
// Bandit compilation: enumerate all interaction transcripts of a small-horizon
// multi-armed bandit into a FiniteISDM whose outcome space is the transcript
// space and whose loss is the cumulative expected regret of the pulled arms.

enum class BanditLossKind { CumulativeRegret };

struct BanditPolicy {
    enum class Kind { Uniform, Fixed, Table };
    Kind kind = Kind::Uniform;
    std::size_t fixed_arm = 0;
    // Table keyed by transcript prefix "a0,r0;a1,r1;..." ("" for the first
    // step).  Every reachable history must have an entry.
    std::map<std::string, std::vector<double>> table;
};

struct BanditInstanceSpec {
    std::size_t arms = 0;
    std::size_t horizon = 0;
    std::vector<std::vector<double>> reward_values;                 // [arm][reward index]
    std::vector<std::vector<std::vector<double>>> reward_probs;     // [model][arm][reward index]
    BanditPolicy policy;
    BanditLossKind loss_kind = BanditLossKind::CumulativeRegret;
    FiniteDistribution prior;
    std::uint64_t transcript_cap = 1'000'000;
};

// Throws std::length_error when the transcript space exceeds the cap and
// std::invalid_argument when a reachable history has no policy row.
FiniteISDM compile_bandit(const BanditInstanceSpec& spec);

}  // namespace lossbound
