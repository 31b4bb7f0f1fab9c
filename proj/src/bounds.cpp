#include "lossbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "lossbound/oracles.hpp"

namespace lossbound {

namespace {

constexpr int kMaxIter = 200;

// Smallest theta in [rho, 1] with bernoulli_divergence(theta, rho) strictly
// above the budget, bracketed from the strict side so the returned theta is
// always admissible.  Empty when even theta = 1 does not exceed the budget.
std::optional<double> smallest_excess_theta(const DivergenceSpec& spec, double rho, double budget,
                                            double tol) {
    if (!(bernoulli_divergence(spec, 1.0, rho) > budget)) return std::nullopt;
    double lo = rho;  // divergence <= budget
    double hi = 1.0;  // divergence >  budget
    for (int i = 0; i < kMaxIter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (bernoulli_divergence(spec, mid, rho) > budget)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

void attach_lower_bound_verdict(BoundReport& report, double bound, double exact) {
    const double gap = bound - exact;
    report.verdict = gap <= 0.0 ? Verdict::ExactHolds : Verdict::ExactFailsBy;
    report.verdict_gap = gap > 0.0 ? gap : 0.0;
}

std::vector<double> cvar_t_grid(const FiniteLossDistribution& ref_law, double l_max, int refine) {
    std::vector<double> base{0.0, l_max};
    for (const auto& a : ref_law.atoms()) base.push_back(a.loss);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end(),
                           [](double x, double y) { return std::abs(x - y) <= kAtomMergeTol; }),
               base.end());
    if (refine <= 1) return base;
    std::vector<double> grid;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        grid.push_back(base[i]);
        const double step = (base[i + 1] - base[i]) / refine;
        for (int k = 1; k < refine; ++k) grid.push_back(base[i] + k * step);
    }
    grid.push_back(base.back());
    return grid;
}

struct CvarScan {
    double bound;
    double t_star;
    double radius_at_t_star;  // ball contribution at the minimizer
};

// Minimize t + scale * lower(B; b_t) over the grid; every grid point is a
// certified lower bound, so the minimum is the conservative choice.
template <typename LowerFn>
CvarScan scan_cvar_grid(const std::vector<double>& grid, const FiniteLossDistribution& ref_law,
                        double l_max, double scale, LowerFn lower_at) {
    CvarScan best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (double t : grid) {
        const double b_t = l_max > 0.0 ? exact_expected_hinge(ref_law, t) / l_max : 0.0;
        const double radius = lower_at(b_t);
        const double value = t + scale * l_max * radius;
        if (value < best.bound) best = {value, t, radius};
    }
    return best;
}

}  // namespace

std::string to_string(BoundTheorem theorem) {
    switch (theorem) {
        case BoundTheorem::TwoSidedTransform: return "two-sided-transform";
        case BoundTheorem::OneSidedTransform: return "one-sided-transform";
        case BoundTheorem::QuantileFano: return "quantile-fano";
        case BoundTheorem::TailToExpectation: return "tail-to-expectation";
        case BoundTheorem::HingeLower: return "hinge-lower";
        case BoundTheorem::CVaRLower: return "cvar-lower";
        case BoundTheorem::CVaRLowerKLPinsker: return "cvar-lower-kl-pinsker";
    }
    return "?";
}

double BoundReport::quantity(const std::string& name) const {
    auto it = quantities.find(name);
    if (it == quantities.end()) throw std::out_of_range("BoundReport: no quantity '" + name + "'");
    return it->second;
}

std::vector<std::pair<std::string, FiniteDistribution>> CandidateRefs::enumerate(
    const FiniteISDM& instance) const {
    std::vector<std::pair<std::string, FiniteDistribution>> out;
    if (include_mixture) out.emplace_back("mixture", mixture_reference(instance));
    if (include_model_rows)
        for (std::size_t m = 0; m < instance.num_models(); ++m)
            out.emplace_back("model:" + std::to_string(m), instance.obs_laws[m]);
    for (std::size_t i = 0; i < extra.size(); ++i)
        out.emplace_back("extra:" + std::to_string(i), extra[i]);
    if (out.empty()) throw std::invalid_argument("empty candidate reference list");
    return out;
}

BoundReport two_sided_transform_bound(const FiniteISDM& instance, const TransformSpec& transform,
                                      const DivergenceSpec& spec,
                                      const FiniteDistribution& reference, double tol) {
    instance.validate();
    const double b = expected_transform(transform, reference_loss(instance, reference));
    const double B = budget(instance, spec, reference);
    const BernoulliBall ball = invert_ball(spec, b, B, tol);
    const double rho_exact = expected_transform(transform, prior_predictive_loss(instance));

    BoundReport report;
    report.theorem = BoundTheorem::TwoSidedTransform;
    report.divergence = to_string(spec.kind());
    report.reference = "explicit";
    report.budget = B;
    report.tolerance = tol;
    report.vacuous = std::isinf(B);
    report.quantities = {{"rho_ref", b},
                         {"rho_exact", rho_exact},
                         {"lower", ball.lower},
                         {"upper", ball.upper}};
    const double gap = std::max(ball.lower - rho_exact, rho_exact - ball.upper);
    report.verdict = gap <= 0.0 ? Verdict::ExactHolds : Verdict::ExactFailsBy;
    report.verdict_gap = gap > 0.0 ? gap : 0.0;
    return report;
}

BoundReport quantile_fano_bound(const FiniteISDM& instance, double delta_level,
                                const DivergenceSpec& spec, const CandidateRefs& refs,
                                double tol) {
    instance.validate();
    if (!(delta_level > 0.0)) throw std::invalid_argument("quantile_fano_bound: delta_level <= 0");
    const TransformSpec indicator = TransformSpec::quantile_indicator(delta_level);

    BoundReport report;
    report.theorem = BoundTheorem::QuantileFano;
    report.divergence = to_string(spec.kind());
    report.tolerance = tol;
    double best_delta = 0.0;
    std::string best_ref = "none";
    double best_budget = 0.0;
    double best_rho = 0.0;
    for (const auto& [name, q] : refs.enumerate(instance)) {
        const double rho = expected_transform(indicator, reference_loss(instance, q));
        const double B = budget(instance, spec, q);
        const auto theta = smallest_excess_theta(spec, rho, B, tol);
        const double delta = theta ? std::max(0.0, 1.0 - *theta) : 0.0;
        if (delta > best_delta || best_ref == "none") {
            best_delta = delta;
            best_ref = name;
            best_budget = B;
            best_rho = rho;
        }
    }
    const auto loss_law = prior_predictive_loss(instance);
    const double exact = exact_tail(loss_law, delta_level, /*strict=*/false);
    report.reference = best_ref;
    report.budget = best_budget;
    report.vacuous = best_delta == 0.0;
    report.quantities = {{"delta_level", delta_level},
                         {"delta_star", best_delta},
                         {"rho_ref", best_rho},
                         {"exact_tail", exact},
                         {"exact_mean", loss_law.mean()}};
    attach_lower_bound_verdict(report, best_delta, exact);
    return report;
}

BoundReport one_sided_transform_bound(const FiniteISDM& instance, const TransformSpec& transform,
                                      const DivergenceSpec& spec, const CandidateRefs& refs,
                                      double tol) {
    instance.validate();
    const auto candidates = refs.enumerate(instance);

    if (transform.direction() == Monotonicity::Unknown) {
        // No orientation to exploit: report the two-sided interval instead,
        // choosing the candidate with the tightest upper endpoint.
        std::optional<BoundReport> best;
        for (const auto& [name, q] : candidates) {
            BoundReport r = two_sided_transform_bound(instance, transform, spec, q, tol);
            r.reference = name;
            if (!best || r.quantity("upper") < best->quantity("upper")) best = std::move(r);
        }
        return *best;
    }

    const double rho_exact = expected_transform(transform, prior_predictive_loss(instance));
    BoundReport report;
    report.theorem = BoundTheorem::OneSidedTransform;
    report.divergence = to_string(spec.kind());
    report.tolerance = tol;
    double best_theta = 1.0;
    std::string best_ref = "none";
    double best_budget = 0.0;
    double best_rho = 0.0;
    bool found = false;
    for (const auto& [name, q] : candidates) {
        const double rho = expected_transform(transform, reference_loss(instance, q));
        const double B = budget(instance, spec, q);
        const auto theta = smallest_excess_theta(spec, rho, B, tol);
        const double value = theta ? *theta : 1.0;
        if (!found || value < best_theta) {
            best_theta = value;
            best_ref = name;
            best_budget = B;
            best_rho = rho;
            found = true;
        }
    }
    report.reference = best_ref;
    report.budget = best_budget;
    report.vacuous = best_theta >= 1.0;
    report.quantities = {{"theta_star", best_theta},
                         {"rho_ref", best_rho},
                         {"rho_exact", rho_exact}};
    if (transform.direction() == Monotonicity::Nonincreasing)
        report.quantities["complement_lower"] = 1.0 - best_theta;
    const double gap = rho_exact - best_theta;  // upper bound must sit above the exact value
    report.verdict = gap <= 0.0 ? Verdict::ExactHolds : Verdict::ExactFailsBy;
    report.verdict_gap = gap > 0.0 ? gap : 0.0;
    return report;
}

BoundReport tail_to_expectation(const BoundReport& quantile_report, double delta_level) {
    if (quantile_report.theorem != BoundTheorem::QuantileFano)
        throw std::invalid_argument("tail_to_expectation: input must be a quantile-fano report");
    BoundReport report = quantile_report;
    report.theorem = BoundTheorem::TailToExpectation;
    const double bound = delta_level * quantile_report.quantity("delta_star");
    report.quantities["bound"] = bound;
    report.vacuous = bound == 0.0;
    attach_lower_bound_verdict(report, bound, quantile_report.quantity("exact_mean"));
    return report;
}

BoundReport hinge_lower_bound(const FiniteISDM& instance, double t, const DivergenceSpec& spec,
                              const FiniteDistribution& reference, double tol) {
    instance.validate();
    const double B = budget(instance, spec, reference);
    const auto ref_law = reference_loss(instance, reference);
    const double b_t =
        instance.l_max > 0.0 ? exact_expected_hinge(ref_law, t) / instance.l_max : 0.0;
    const BernoulliBall ball = invert_ball(spec, b_t, B, tol);
    const double bound = instance.l_max * ball.lower;
    const double exact = exact_expected_hinge(prior_predictive_loss(instance), t);

    BoundReport report;
    report.theorem = BoundTheorem::HingeLower;
    report.divergence = to_string(spec.kind());
    report.reference = "explicit";
    report.budget = B;
    report.tolerance = tol;
    report.vacuous = bound == 0.0;
    report.quantities = {{"t", t}, {"b_t", b_t}, {"lower", ball.lower}, {"bound", bound},
                         {"exact_hinge", exact}};
    attach_lower_bound_verdict(report, bound, exact);
    return report;
}

BoundReport cvar_lower_bound(const FiniteISDM& instance, double alpha, const DivergenceSpec& spec,
                             const FiniteDistribution& reference, const TGridPolicy& grid_policy,
                             double tol) {
    instance.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("cvar_lower_bound: alpha must lie in (0,1)");
    const double B = budget(instance, spec, reference);
    const auto ref_law = reference_loss(instance, reference);
    const double scale = 1.0 / (1.0 - alpha);
    const auto lower_at = [&](double b_t) { return invert_ball(spec, b_t, B, tol).lower; };

    const auto coarse_grid = cvar_t_grid(ref_law, instance.l_max, 1);
    const auto fine_grid = cvar_t_grid(ref_law, instance.l_max, grid_policy.refine);
    const CvarScan coarse = scan_cvar_grid(coarse_grid, ref_law, instance.l_max, scale, lower_at);
    const CvarScan fine = scan_cvar_grid(fine_grid, ref_law, instance.l_max, scale, lower_at);
    const CvarScan& best = fine.bound <= coarse.bound ? fine : coarse;

    const double exact = exact_cvar(prior_predictive_loss(instance), alpha);
    BoundReport report;
    report.theorem = BoundTheorem::CVaRLower;
    report.divergence = to_string(spec.kind());
    report.reference = "explicit";
    report.budget = B;
    report.tolerance = tol;
    report.t_refine = grid_policy.refine;
    report.vacuous = best.radius_at_t_star == 0.0 && best.t_star == fine_grid.front();
    report.quantities = {{"alpha", alpha},
                         {"bound", best.bound},
                         {"t_star", best.t_star},
                         {"coarse_bound", coarse.bound},
                         {"grid_discrepancy", std::abs(fine.bound - coarse.bound)},
                         {"exact_cvar", exact}};
    attach_lower_bound_verdict(report, best.bound, exact);
    return report;
}

BoundReport cvar_lower_bound_kl_pinsker(const FiniteISDM& instance, double alpha,
                                        const TGridPolicy& grid_policy, double tol) {
    instance.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("cvar_lower_bound_kl_pinsker: alpha must lie in (0,1)");
    const DivergenceSpec kl(DivergenceKind::KL);
    const FiniteDistribution mixture = mixture_reference(instance);
    const double info = budget(instance, kl, mixture);  // mutual information
    const double radius = std::sqrt(0.5 * info);
    const auto ref_law = reference_loss(instance, mixture);
    const double scale = 1.0 / (1.0 - alpha);
    const auto envelope_at = [&](double b_t) { return std::max(0.0, b_t - radius); };

    const auto fine_grid = cvar_t_grid(ref_law, instance.l_max, grid_policy.refine);
    const CvarScan pinsker =
        scan_cvar_grid(fine_grid, ref_law, instance.l_max, scale, envelope_at);
    const BoundReport sharper = cvar_lower_bound(instance, alpha, kl, mixture, grid_policy, tol);

    const double exact = exact_cvar(prior_predictive_loss(instance), alpha);
    BoundReport report;
    report.theorem = BoundTheorem::CVaRLowerKLPinsker;
    report.divergence = to_string(kl.kind());
    report.reference = "mixture";
    report.budget = info;
    report.tolerance = tol;
    report.t_refine = grid_policy.refine;
    report.vacuous = pinsker.radius_at_t_star == 0.0 && pinsker.t_star == fine_grid.front();
    report.quantities = {{"alpha", alpha},
                         {"bound", pinsker.bound},
                         {"t_star", pinsker.t_star},
                         {"mutual_information", info},
                         {"exact_inversion_bound", sharper.quantity("bound")},
                         {"exact_cvar", exact}};
    attach_lower_bound_verdict(report, pinsker.bound, exact);
    return report;
}

}  // namespace lossbound
