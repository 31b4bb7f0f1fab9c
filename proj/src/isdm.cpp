#include "lossbound/isdm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lossbound {

void FiniteISDM::validate() const {
    const std::size_t m = num_models();
    if (m == 0) throw std::invalid_argument("instance: empty prior");
    if (obs_laws.size() != m) throw std::invalid_argument("instance: obs_laws rows != prior length");
    if (loss.size() != m) throw std::invalid_argument("instance: loss rows != prior length");
    const std::size_t x = num_outcomes();
    if (x == 0) throw std::invalid_argument("instance: empty outcome space");
    for (const auto& row : obs_laws)
        if (row.size() != x) throw std::invalid_argument("instance: ragged obs_laws");
    if (!(l_max >= 0.0)) throw std::invalid_argument("instance: l_max must be nonnegative");
    for (const auto& row : loss) {
        if (row.size() != x) throw std::invalid_argument("instance: ragged loss matrix");
        for (double v : row)
            if (!(v >= 0.0 && v <= l_max))
                throw std::invalid_argument("instance: loss entry outside [0, l_max]");
    }
}

double budget(const FiniteISDM& instance, const DivergenceSpec& spec,
              const FiniteDistribution& reference) {
    if (reference.size() != instance.num_outcomes())
        throw std::invalid_argument("budget: reference length mismatch");
    double total = 0.0;
    for (std::size_t m = 0; m < instance.num_models(); ++m) {
        if (instance.prior[m] == 0.0) continue;
        const double d = f_divergence(spec, instance.obs_laws[m], reference);
        if (std::isinf(d)) return d;
        total += instance.prior[m] * d;
    }
    return total;
}

FiniteDistribution mixture_reference(const FiniteISDM& instance) {
    std::vector<double> mix(instance.num_outcomes(), 0.0);
    for (std::size_t m = 0; m < instance.num_models(); ++m)
        for (std::size_t x = 0; x < mix.size(); ++x)
            mix[x] += instance.prior[m] * instance.obs_laws[m][x];
    return FiniteDistribution(std::move(mix));
}

double mutual_information(const FiniteISDM& instance) {
    return budget(instance, DivergenceSpec(DivergenceKind::KL), mixture_reference(instance));
}

FiniteLossDistribution prior_predictive_loss(const FiniteISDM& instance) {
    std::vector<LossAtom> atoms;
    atoms.reserve(instance.num_models() * instance.num_outcomes());
    for (std::size_t m = 0; m < instance.num_models(); ++m)
        for (std::size_t x = 0; x < instance.num_outcomes(); ++x)
            atoms.push_back({instance.loss[m][x], instance.prior[m] * instance.obs_laws[m][x]});
    return FiniteLossDistribution(std::move(atoms));
}

FiniteLossDistribution reference_loss(const FiniteISDM& instance,
                                      const FiniteDistribution& reference) {
    if (reference.size() != instance.num_outcomes())
        throw std::invalid_argument("reference_loss: reference length mismatch");
    std::vector<LossAtom> atoms;
    atoms.reserve(instance.num_models() * instance.num_outcomes());
    for (std::size_t m = 0; m < instance.num_models(); ++m)
        for (std::size_t x = 0; x < instance.num_outcomes(); ++x)
            atoms.push_back({instance.loss[m][x], instance.prior[m] * reference[x]});
    return FiniteLossDistribution(std::move(atoms));
}

namespace {

struct Step {
    std::size_t arm;
    std::size_t reward;
};

std::string prefix_key(const std::vector<Step>& steps, std::size_t upto) {
    std::ostringstream out;
    for (std::size_t i = 0; i < upto; ++i) {
        if (i) out << ';';
        out << steps[i].arm << ',' << steps[i].reward;
    }
    return out.str();
}

std::vector<double> policy_row(const BanditPolicy& policy, std::size_t arms,
                               const std::string& key) {
    switch (policy.kind) {
        case BanditPolicy::Kind::Uniform:
            return std::vector<double>(arms, 1.0 / static_cast<double>(arms));
        case BanditPolicy::Kind::Fixed: {
            if (policy.fixed_arm >= arms)
                throw std::invalid_argument("bandit policy: fixed arm out of range");
            std::vector<double> row(arms, 0.0);
            row[policy.fixed_arm] = 1.0;
            return row;
        }
        case BanditPolicy::Kind::Table: {
            auto it = policy.table.find(key);
            if (it == policy.table.end())
                throw std::invalid_argument("bandit policy: missing row for history '" + key + "'");
            if (it->second.size() != arms)
                throw std::invalid_argument("bandit policy: row length != arms");
            double sum = 0.0;
            for (double p : it->second) {
                if (!(p >= 0.0)) throw std::invalid_argument("bandit policy: negative probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbSumTol)
                throw std::invalid_argument("bandit policy: row does not sum to 1");
            return it->second;
        }
    }
    throw std::logic_error("unreachable policy kind");
}

}  // namespace

FiniteISDM compile_bandit(const BanditInstanceSpec& spec) {
    if (spec.arms == 0 || spec.horizon == 0)
        throw std::invalid_argument("bandit: arms and horizon must be positive");
    if (spec.reward_values.size() != spec.arms)
        throw std::invalid_argument("bandit: reward_values needs one list per arm");
    const std::size_t models = spec.prior.size();
    if (spec.reward_probs.size() != models)
        throw std::invalid_argument("bandit: reward_probs rows != prior length");
    for (const auto& per_model : spec.reward_probs) {
        if (per_model.size() != spec.arms)
            throw std::invalid_argument("bandit: reward_probs needs one row per arm");
        for (std::size_t a = 0; a < spec.arms; ++a) {
            if (per_model[a].size() != spec.reward_values[a].size())
                throw std::invalid_argument("bandit: reward_probs row length != alphabet size");
            (void)FiniteDistribution(per_model[a]);  // validates
        }
    }

    // Transcript space size: (sum over arms of alphabet size)^horizon.
    std::size_t per_step = 0;
    for (const auto& vals : spec.reward_values) per_step += vals.size();
    double space = 1.0;
    for (std::size_t t = 0; t < spec.horizon; ++t) {
        space *= static_cast<double>(per_step);
        if (space > static_cast<double>(spec.transcript_cap))
            throw std::length_error("bandit: transcript space exceeds cap");
    }
    const std::size_t num_transcripts = static_cast<std::size_t>(space);

    // Mean reward and per-model optimum, for the regret loss.
    std::vector<std::vector<double>> mean(models, std::vector<double>(spec.arms, 0.0));
    std::vector<double> best(models, 0.0);
    double max_gap = 0.0;
    for (std::size_t m = 0; m < models; ++m) {
        for (std::size_t a = 0; a < spec.arms; ++a) {
            double mu = 0.0;
            for (std::size_t r = 0; r < spec.reward_values[a].size(); ++r)
                mu += spec.reward_values[a][r] * spec.reward_probs[m][a][r];
            mean[m][a] = mu;
        }
        best[m] = *std::max_element(mean[m].begin(), mean[m].end());
        for (std::size_t a = 0; a < spec.arms; ++a)
            max_gap = std::max(max_gap, best[m] - mean[m][a]);
    }

    FiniteISDM out;
    out.prior = spec.prior;
    out.l_max = static_cast<double>(spec.horizon) * max_gap;
    out.obs_laws.reserve(models);
    out.loss.assign(models, std::vector<double>(num_transcripts, 0.0));
    std::vector<std::vector<double>> rows(models, std::vector<double>(num_transcripts, 0.0));
    out.outcome_labels.reserve(num_transcripts);

    // Enumerate transcripts in mixed-radix order over (arm, reward) steps.
    std::vector<Step> steps(spec.horizon, {0, 0});
    for (std::size_t idx = 0; idx < num_transcripts; ++idx) {
        std::size_t code = idx;
        for (std::size_t t = 0; t < spec.horizon; ++t) {
            std::size_t step_code = code % per_step;
            code /= per_step;
            std::size_t arm = 0;
            while (step_code >= spec.reward_values[arm].size()) {
                step_code -= spec.reward_values[arm].size();
                ++arm;
            }
            steps[t] = {arm, step_code};
        }
        // Policy probabilities are model-independent; evaluate once per prefix.
        std::vector<double> act_prob(spec.horizon, 0.0);
        for (std::size_t t = 0; t < spec.horizon; ++t) {
            const auto row = policy_row(spec.policy, spec.arms, prefix_key(steps, t));
            act_prob[t] = row[steps[t].arm];
        }
        out.outcome_labels.push_back(prefix_key(steps, spec.horizon));
        for (std::size_t m = 0; m < models; ++m) {
            double prob = 1.0;
            double regret = 0.0;
            for (std::size_t t = 0; t < spec.horizon; ++t) {
                prob *= act_prob[t] * spec.reward_probs[m][steps[t].arm][steps[t].reward];
                regret += best[m] - mean[m][steps[t].arm];
            }
            rows[m][idx] = prob;
            // Clamp rounding dust so the loss matrix respects l_max exactly.
            out.loss[m][idx] = std::min(std::max(regret, 0.0), out.l_max);
        }
    }
    for (std::size_t m = 0; m < models; ++m)
        out.obs_laws.emplace_back(std::move(rows[m]));
    out.validate();
    return out;
}

}  // namespace lossbound
