#pragma once
#include "lossbound/distribution.hpp"

namespace lossbound {

// Exact CVaR of a discrete loss law: average of the worst (1 - alpha) mass,
// splitting the boundary atom fractionally.  This tail-average form is an
// independent route to the same value as the variational
// min_t { t + E[(L-t)_+] / (1-alpha) }; the two are cross-checked in tests.
double exact_cvar(const FiniteLossDistribution& dist, double alpha);

// P(L >= threshold), or P(L > threshold) when strict.
double exact_tail(const FiniteLossDistribution& dist, double threshold, bool strict = false);

// E[(L - t)_+].
double exact_expected_hinge(const FiniteLossDistribution& dist, double t);

// Level-alpha quantile (VaR): smallest loss value with P(L <= v) >= alpha.
double exact_var(const FiniteLossDistribution& dist, double alpha);

}  // namespace lossbound
