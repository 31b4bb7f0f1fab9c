#include "lossbound/fuzz.hpp"

#include <cmath>
#include <random>

#include "json.hpp"
#include "lossbound/montecarlo.hpp"
#include "lossbound/oracles.hpp"

namespace lossbound {

namespace {

FiniteDistribution dirichlet_row(std::mt19937_64& rng, std::size_t n) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> row(n);
    double sum = 0.0;
    for (double& v : row) {
        v = expo(rng) + 1e-12;  // keep full support
        sum += v;
    }
    for (double& v : row) v /= sum;
    return FiniteDistribution(std::move(row));
}

FiniteDistribution disjoint_row(std::mt19937_64& rng, std::size_t n, std::size_t model,
                                std::size_t models) {
    // Support restricted to this model's slice of the outcome set, so that
    // pairs of models have disjoint supports and KL budgets are infinite.
    std::vector<double> row(n, 0.0);
    const std::size_t per = std::max<std::size_t>(1, n / models);
    const std::size_t lo = std::min(model * per, n - 1);
    const std::size_t hi = model + 1 == models ? n : std::min(lo + per, n);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += row[i] = unif(rng);
    for (std::size_t i = lo; i < hi; ++i) row[i] /= sum;
    return FiniteDistribution(std::move(row));
}

struct Checker {
    FuzzSummary& summary;
    std::uint64_t seed;

    void check(const std::string& theorem, bool ok) {
        ++summary.checks;
        ++summary.checks_per_theorem[theorem];
        if (!ok) {
            ++summary.violations;
            ++summary.violations_per_theorem[theorem];
            if (summary.failure_seeds.empty() || summary.failure_seeds.back() != seed)
                summary.failure_seeds.push_back(seed);
        }
    }
};

}  // namespace

FiniteISDM random_instance(std::uint64_t mixed_seed, const FuzzConfig& config) {
    std::mt19937_64 rng(mixed_seed);
    std::uniform_int_distribution<std::size_t> model_count(config.min_models, config.max_models);
    std::uniform_int_distribution<std::size_t> outcome_count(config.min_outcomes,
                                                            config.max_outcomes);
    const std::size_t models = model_count(rng);
    const std::size_t outcomes = outcome_count(rng);

    FiniteISDM instance;
    instance.prior = dirichlet_row(rng, models);
    std::uniform_real_distribution<double> lmax_draw(0.5, 10.0);
    instance.l_max = lmax_draw(rng);
    std::uniform_real_distribution<double> loss_draw(0.0, instance.l_max);
    for (std::size_t m = 0; m < models; ++m) {
        instance.obs_laws.push_back(config.disjoint_supports
                                        ? disjoint_row(rng, outcomes, m, models)
                                        : dirichlet_row(rng, outcomes));
        std::vector<double> row(outcomes);
        for (double& v : row) v = loss_draw(rng);
        instance.loss.push_back(std::move(row));
    }
    instance.validate();
    return instance;
}

FuzzSummary fuzz_soundness(const FuzzConfig& config) {
    FuzzSummary summary;
    for (std::uint64_t i = 0; i < config.iterations; ++i) {
        const std::uint64_t seed = mix_seed(config.master_seed, i);
        const FiniteISDM instance = random_instance(seed, config);
        ++summary.instances;
        Checker checker{summary, seed};

        std::mt19937_64 rng(mix_seed(seed, 0xf22));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double delta_level = instance.l_max * (0.1 + 0.8 * unif(rng));
        const double hinge_t = instance.l_max * 0.8 * unif(rng);
        const std::vector<TransformSpec> transforms{
            TransformSpec::quantile_indicator(delta_level),
            TransformSpec::hinge(hinge_t, instance.l_max),
            TransformSpec::clipped_mean(instance.l_max * (0.2 + 0.8 * unif(rng))),
            TransformSpec::laplace(0.1 + 2.0 * unif(rng)),
        };

        const FiniteDistribution mixture = mixture_reference(instance);
        const auto loss_law = prior_predictive_loss(instance);
        const double tol = config.soundness_tol;
        const CandidateRefs refs;

        for (DivergenceKind kind : config.divergences) {
            const DivergenceSpec spec(kind);
            for (const auto& transform : transforms) {
                const auto two = two_sided_transform_bound(instance, transform, spec, mixture,
                                                           config.tol);
                const double rho = two.quantity("rho_exact");
                checker.check("two-sided-transform",
                              two.quantity("lower") <= rho + tol &&
                                  rho <= two.quantity("upper") + tol);

                const auto one = one_sided_transform_bound(instance, transform, spec, refs,
                                                           config.tol);
                checker.check("one-sided-transform",
                              one.quantity("theta_star") >=
                                  expected_transform(transform, loss_law) - tol);
            }
            const auto fano = quantile_fano_bound(instance, delta_level, spec, refs, config.tol);
            checker.check("quantile-fano",
                          fano.quantity("delta_star") <= fano.quantity("exact_tail") + tol);
            const auto markov = tail_to_expectation(fano, delta_level);
            checker.check("tail-to-expectation",
                          markov.quantity("bound") <= loss_law.mean() + tol);

            const auto hinge = hinge_lower_bound(instance, hinge_t, spec, mixture, config.tol);
            checker.check("hinge-lower",
                          hinge.quantity("bound") <= hinge.quantity("exact_hinge") + tol);

            for (double alpha : config.alphas) {
                const auto cvar =
                    cvar_lower_bound(instance, alpha, spec, mixture, {}, config.tol);
                checker.check("cvar-lower",
                              cvar.quantity("bound") <= cvar.quantity("exact_cvar") + tol);
            }
        }
        for (double alpha : config.alphas) {
            const auto pinsker = cvar_lower_bound_kl_pinsker(instance, alpha, {}, config.tol);
            checker.check("cvar-lower-kl-pinsker",
                          pinsker.quantity("bound") <= pinsker.quantity("exact_cvar") + tol);
            // Exact inversion never loses to the Pinsker envelope; no slack.
            checker.check("pinsker-dominance",
                          pinsker.quantity("exact_inversion_bound") >= pinsker.quantity("bound"));
        }
    }
    return summary;
}

std::string FuzzSummary::to_json() const {
    nlohmann::json j;
    j["instances"] = instances;
    j["checks"] = checks;
    j["violations"] = violations;
    j["checks_per_theorem"] = checks_per_theorem;
    j["violations_per_theorem"] = violations_per_theorem;
    j["failure_seeds"] = failure_seeds;
    return j.dump(2);
}

}  // namespace lossbound
