#include "lossbound/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lossbound {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::size_t sample_index(const FiniteDistribution& dist, double u) {
    double cdf = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        cdf += dist[i];
        if (u <= cdf) return i;
    }
    return dist.size() - 1;
}

}  // namespace

McEstimate mc_transform_estimate(const FiniteISDM& instance, const TransformSpec& transform,
                                 const McSettings& settings) {
    if (settings.samples == 0) throw std::invalid_argument("mc: samples must be >= 1");
    instance.validate();
    std::mt19937_64 rng(mix_seed(settings.seed, settings.stream_id));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < settings.samples; ++i) {
        const std::size_t m = sample_index(instance.prior, unif(rng));
        const std::size_t x = sample_index(instance.obs_laws[m], unif(rng));
        const double u = unif(rng);
        if (u <= transform.evaluate(instance.loss[m][x])) ++hits;
    }
    const double n = static_cast<double>(settings.samples);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace lossbound
