#pragma once
#include <map>
#include <string>
#include <vector>

#include "lossbound/inversion.hpp"
#include "lossbound/isdm.hpp"
#include "lossbound/transform.hpp"

namespace lossbound {

enum class BoundTheorem {
    TwoSidedTransform,
    OneSidedTransform,
    QuantileFano,
    TailToExpectation,
    HingeLower,
    CVaRLower,
    CVaRLowerKLPinsker,
};

std::string to_string(BoundTheorem theorem);

enum class Verdict { ExactHolds, ExactFailsBy, NotChecked };

// A certified bound together with everything needed to audit it: the
// divergence and reference used, the budget, the relevant intermediate
// quantities, tolerances, and the verdict of the comparison against the exact
// brute-force value on the instance.
struct BoundReport {
    BoundTheorem theorem = BoundTheorem::TwoSidedTransform;
    std::string divergence;
    std::string reference;     // "mixture", "model:k", "explicit", ...
    double budget = 0.0;
    std::map<std::string, double> quantities;
    double tolerance = kDefaultMeanTol;
    int t_refine = 0;
    bool vacuous = false;
    Verdict verdict = Verdict::NotChecked;
    double verdict_gap = 0.0;  // positive when the exact inequality fails

    double quantity(const std::string& name) const;
};

// Candidate reference distributions searched by the one-sided bounds.  The
// idealized supremum ranges over the whole simplex; here the search set is
// the mixture, each model's own law, and any user-supplied candidates, and the
// winning candidate is recorded in the report.
struct CandidateRefs {
    bool include_mixture = true;
    bool include_model_rows = true;
    std::vector<FiniteDistribution> extra;

    std::vector<std::pair<std::string, FiniteDistribution>> enumerate(
        const FiniteISDM& instance) const;
};

struct TGridPolicy {
    int refine = 16;  // uniform subdivisions inserted between adjacent loss atoms
};

// Two-sided interval for E[phi(L)] from the Bernoulli ball at the budget
// against `reference`.  Quantities: rho_ref (b), rho_exact, lower, upper.
BoundReport two_sided_transform_bound(const FiniteISDM& instance, const TransformSpec& transform,
                                      const DivergenceSpec& spec,
                                      const FiniteDistribution& reference,
                                      double tol = kDefaultMeanTol);

// Largest certified delta with budget < d_{f,delta}(rho), maximized over the
// candidate references: a lower bound on P(L >= delta_level).
BoundReport quantile_fano_bound(const FiniteISDM& instance, double delta_level,
                                const DivergenceSpec& spec, const CandidateRefs& refs,
                                double tol = kDefaultMeanTol);

// Smallest certified theta with budget < d_{f,theta}(rho): an upper bound on
// E[phi(L)].  For nonincreasing transforms the report also carries the implied
// lower bound 1 - theta* on the complementary quantity.
BoundReport one_sided_transform_bound(const FiniteISDM& instance, const TransformSpec& transform,
                                      const DivergenceSpec& spec, const CandidateRefs& refs,
                                      double tol = kDefaultMeanTol);

// E[L] >= delta_level * delta_star, from a QuantileFano report.
BoundReport tail_to_expectation(const BoundReport& quantile_report, double delta_level);

// E[(L - t)_+] >= l_max * lower endpoint of the ball at b_t.
BoundReport hinge_lower_bound(const FiniteISDM& instance, double t, const DivergenceSpec& spec,
                              const FiniteDistribution& reference, double tol = kDefaultMeanTol);

// CVaR_alpha(L) >= min over the t grid of t + l_max/(1-alpha) * lower(B; b_t).
// Every evaluated grid point is itself a certified bound, so the minimum over
// the grid is sound regardless of grid resolution.
BoundReport cvar_lower_bound(const FiniteISDM& instance, double alpha, const DivergenceSpec& spec,
                             const FiniteDistribution& reference, const TGridPolicy& grid = {},
                             double tol = kDefaultMeanTol);

// KL + mixture specialization with the Pinsker envelope [b_t - sqrt(I/2)]_+
// in place of the exact lower endpoint; also reports the sharper
// exact-inversion value on the same grid for comparison.
BoundReport cvar_lower_bound_kl_pinsker(const FiniteISDM& instance, double alpha,
                                        const TGridPolicy& grid = {},
                                        double tol = kDefaultMeanTol);

}  // namespace lossbound
