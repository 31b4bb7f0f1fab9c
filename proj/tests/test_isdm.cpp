#include <cmath>
#include <random>

#include "doctest.h"
#include "lossbound/fuzz.hpp"
#include "lossbound/isdm.hpp"
#include "lossbound/montecarlo.hpp"
#include "lossbound/oracles.hpp"
#include "lossbound/transform.hpp"

using namespace lossbound;

namespace {

const DivergenceSpec kKL(DivergenceKind::KL);

FiniteISDM two_model_instance() {
    FiniteISDM instance;
    instance.prior = FiniteDistribution({0.5, 0.5});
    instance.obs_laws = {FiniteDistribution({0.6, 0.4}), FiniteDistribution({0.2, 0.8})};
    instance.loss = {{0.0, 2.0}, {1.0, 3.0}};
    instance.l_max = 3.0;
    return instance;
}

double kl_pair(const FiniteDistribution& p, const FiniteDistribution& q) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) total += p[i] * std::log(p[i] / q[i]);
    return total;
}

}  // namespace

TEST_CASE("instance validation") {
    auto instance = two_model_instance();
    CHECK_NOTHROW(instance.validate());
    instance.loss[0][1] = 5.0;  // above l_max
    CHECK_THROWS_AS(instance.validate(), std::invalid_argument);
    instance = two_model_instance();
    instance.loss.pop_back();
    CHECK_THROWS_AS(instance.validate(), std::invalid_argument);
}

TEST_CASE("mixture reference") {
    const auto instance = two_model_instance();
    const auto mix = mixture_reference(instance);
    CHECK(mix[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(mix[1] == doctest::Approx(0.6).epsilon(1e-15));

    FiniteISDM single = instance;
    single.prior = FiniteDistribution({1.0, 0.0});
    const auto point = mixture_reference(single);
    CHECK(point[0] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("budget against the mixture equals the mutual information") {
    const auto instance = two_model_instance();
    const auto mix = mixture_reference(instance);
    const double oracle =
        0.5 * kl_pair(instance.obs_laws[0], mix) + 0.5 * kl_pair(instance.obs_laws[1], mix);
    CHECK(oracle == doctest::Approx(0.0863).epsilon(2e-3));
    CHECK(budget(instance, kKL, mix) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(mutual_information(instance) == budget(instance, kKL, mix));
}

TEST_CASE("budget degeneracies") {
    auto instance = two_model_instance();
    instance.obs_laws[1] = instance.obs_laws[0];  // identical rows
    CHECK(budget(instance, kKL, instance.obs_laws[0]) == 0.0);
    CHECK(mutual_information(instance) <= 1e-12);

    // support mismatch: infinite KL budget
    const auto reference = FiniteDistribution({1.0, 0.0});
    CHECK(std::isinf(budget(two_model_instance(), kKL, reference)));
    CHECK_THROWS_AS(budget(two_model_instance(), kKL, FiniteDistribution({1.0})),
                    std::invalid_argument);
}

TEST_CASE("disjoint supports give mutual information ln 2") {
    FiniteISDM instance;
    instance.prior = FiniteDistribution({0.5, 0.5});
    instance.obs_laws = {FiniteDistribution({0.7, 0.3, 0.0, 0.0}),
                         FiniteDistribution({0.0, 0.0, 0.4, 0.6})};
    instance.loss = {{0, 1, 2, 3}, {3, 2, 1, 0}};
    instance.l_max = 3.0;
    CHECK(mutual_information(instance) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("prior predictive loss pushforward") {
    FiniteISDM instance;
    instance.prior = FiniteDistribution({1.0});
    instance.obs_laws = {FiniteDistribution({0.7, 0.3})};
    instance.loss = {{0.0, 5.0}};
    instance.l_max = 5.0;
    const auto law = prior_predictive_loss(instance);
    REQUIRE(law.size() == 2);
    CHECK(law.atoms()[0].loss == 0.0);
    CHECK(law.atoms()[0].prob == doctest::Approx(0.7));
    CHECK(law.atoms()[1].loss == 5.0);
    CHECK(law.atoms()[1].prob == doctest::Approx(0.3));

    // shared loss values merge
    const auto merged = prior_predictive_loss(two_model_instance());
    double total = 0.0;
    for (const auto& a : merged.atoms()) total += a.prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("reference loss law") {
    const auto instance = two_model_instance();
    const auto mix = mixture_reference(instance);
    const auto law = reference_loss(instance, mix);
    // double-sum oracle
    double oracle_mean = 0.0;
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t x = 0; x < 2; ++x)
            oracle_mean += instance.prior[m] * mix[x] * instance.loss[m][x];
    CHECK(law.mean() == doctest::Approx(oracle_mean).epsilon(1e-14));

    // single-model coincidence with the prior predictive
    FiniteISDM single;
    single.prior = FiniteDistribution({1.0});
    single.obs_laws = {FiniteDistribution({0.25, 0.75})};
    single.loss = {{1.0, 2.0}};
    single.l_max = 2.0;
    const auto a = prior_predictive_loss(single);
    const auto b = reference_loss(single, single.obs_laws[0]);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.atoms()[i].prob == doctest::Approx(b.atoms()[i].prob).epsilon(1e-15));
}

TEST_CASE("data processing: coarsening never increases the divergence") {
    std::mt19937_64 rng(1234);
    FuzzConfig config;
    const std::vector<DivergenceKind> kinds{DivergenceKind::KL, DivergenceKind::TotalVariation,
                                            DivergenceKind::ChiSquared,
                                            DivergenceKind::SquaredHellinger};
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto instance = random_instance(mix_seed(77, trial), config);
        const std::size_t n = instance.num_outcomes();
        std::uniform_int_distribution<std::size_t> alphabet(1, n);
        const std::size_t k = alphabet(rng);
        std::vector<std::size_t> map(n);
        std::uniform_int_distribution<std::size_t> target(0, k - 1);
        for (auto& v : map) v = target(rng);
        const DivergenceSpec spec(kinds[pick_kind(rng)]);

        double avg = 0.0, avg_push = 0.0;
        const auto mix = mixture_reference(instance);
        std::vector<double> mix_push(k, 0.0);
        for (std::size_t x = 0; x < n; ++x) mix_push[map[x]] += mix[x];
        const FiniteDistribution mix_pushed(mix_push);
        for (std::size_t m = 0; m < instance.num_models(); ++m) {
            std::vector<double> row_push(k, 0.0);
            for (std::size_t x = 0; x < n; ++x) row_push[map[x]] += instance.obs_laws[m][x];
            const FiniteDistribution pushed(row_push);
            const double orig = f_divergence(spec, instance.obs_laws[m], mix);
            const double coarse = f_divergence(spec, pushed, mix_pushed);
            CHECK(coarse <= orig + 1e-12);  // per model
            avg += instance.prior[m] * orig;
            avg_push += instance.prior[m] * coarse;
        }
        CHECK(avg_push <= avg + 1e-12);  // in prior average
    }
}

TEST_CASE("bandit compilation, horizon 1") {
    BanditInstanceSpec spec;
    spec.arms = 2;
    spec.horizon = 1;
    spec.reward_values = {{0.0, 1.0}, {0.0, 1.0}};
    spec.reward_probs = {{{0.5, 0.5}, {0.2, 0.8}}, {{0.3, 0.7}, {0.6, 0.4}}};
    spec.prior = FiniteDistribution({0.5, 0.5});
    const auto instance = compile_bandit(spec);
    CHECK(instance.num_outcomes() == 4);
    for (const auto& row : instance.obs_laws) {
        double sum = 0.0;
        for (std::size_t x = 0; x < row.size(); ++x) sum += row[x];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t x = 0; x < 4; ++x) {
            CHECK(instance.loss[m][x] >= 0.0);
            CHECK(instance.loss[m][x] <= instance.l_max);
        }
}

TEST_CASE("bandit compilation, horizon 2 binary rewards") {
    BanditInstanceSpec spec;
    spec.arms = 2;
    spec.horizon = 2;
    spec.reward_values = {{0.0, 1.0}, {0.0, 1.0}};
    spec.reward_probs = {{{0.4, 0.6}, {0.7, 0.3}}, {{0.8, 0.2}, {0.1, 0.9}}};
    spec.prior = FiniteDistribution({0.5, 0.5});
    const auto instance = compile_bandit(spec);
    CHECK(instance.num_outcomes() == 16);
    for (const auto& row : instance.obs_laws) {
        double sum = 0.0;
        for (std::size_t x = 0; x < row.size(); ++x) sum += row[x];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("deterministic policy gives zero mass off its support") {
    BanditInstanceSpec spec;
    spec.arms = 2;
    spec.horizon = 2;
    spec.reward_values = {{0.0, 1.0}, {0.0, 1.0}};
    spec.reward_probs = {{{0.4, 0.6}, {0.7, 0.3}}, {{0.8, 0.2}, {0.1, 0.9}}};
    spec.prior = FiniteDistribution({0.5, 0.5});
    spec.policy.kind = BanditPolicy::Kind::Fixed;
    spec.policy.fixed_arm = 1;
    const auto instance = compile_bandit(spec);
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t x = 0; x < instance.num_outcomes(); ++x) {
            const auto& label = instance.outcome_labels[x];
            if (label.find("0,") != std::string::npos)  // any pull of arm 0
                CHECK(instance.obs_laws[m][x] == 0.0);
        }
}

TEST_CASE("bandit guards: cap and missing policy rows") {
    BanditInstanceSpec spec;
    spec.arms = 2;
    spec.horizon = 12;
    spec.reward_values = {{0.0, 1.0}, {0.0, 1.0}};
    spec.reward_probs = {{{0.4, 0.6}, {0.7, 0.3}}};
    spec.prior = FiniteDistribution({1.0});
    spec.transcript_cap = 1000;
    CHECK_THROWS_AS(compile_bandit(spec), std::length_error);

    spec.horizon = 2;
    spec.policy.kind = BanditPolicy::Kind::Table;
    spec.policy.table[""] = {0.5, 0.5};  // first step only; step-2 rows missing
    CHECK_THROWS_AS(compile_bandit(spec), std::invalid_argument);
}

TEST_CASE("monte carlo transform frequency matches enumeration") {
    const auto instance = two_model_instance();
    const auto transform = TransformSpec::hinge(1.0, instance.l_max);
    const double exact = expected_transform(transform, prior_predictive_loss(instance));
    const auto est = mc_transform_estimate(instance, transform, {100'000, 4242, 0});
    CHECK(std::abs(est.estimate - exact) <= 3.0 * est.std_error + 1e-9);
}
