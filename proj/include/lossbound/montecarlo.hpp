#pragma once
#include <cstdint>

#include "lossbound/isdm.hpp"
#include "lossbound/transform.hpp"

namespace lossbound {

struct McSettings {
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;  // independent substream selector
};

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Frequency of the randomized bit 1{U <= phi(L(M,X))} with M ~ prior,
// X ~ obs_laws[M], U ~ Unif[0,1], and its binomial standard error.
// Deterministic given (seed, stream_id), independent of scheduling.
McEstimate mc_transform_estimate(const FiniteISDM& instance, const TransformSpec& transform,
                                 const McSettings& settings);

// Deterministic seed mixing for derived streams (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace lossbound
