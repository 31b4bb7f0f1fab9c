#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lossbound/bounds.hpp"
#include "lossbound/isdm.hpp"

namespace lossbound {

struct FuzzConfig {
    std::uint64_t iterations = 500;
    std::uint64_t master_seed = 0x10552ecf;
    std::size_t min_models = 2, max_models = 4;
    std::size_t min_outcomes = 2, max_outcomes = 5;
    std::vector<DivergenceKind> divergences{DivergenceKind::KL, DivergenceKind::TotalVariation,
                                            DivergenceKind::ChiSquared,
                                            DivergenceKind::SquaredHellinger};
    std::vector<double> alphas{0.5, 0.9, 0.95};
    double soundness_tol = 1e-8;
    bool disjoint_supports = false;  // exercise the infinite-budget paths
    double tol = kDefaultMeanTol;
};

struct FuzzSummary {
    std::uint64_t instances = 0;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::map<std::string, std::uint64_t> checks_per_theorem;
    std::map<std::string, std::uint64_t> violations_per_theorem;
    std::vector<std::uint64_t> failure_seeds;  // mixed (master, index) seeds of failures
    std::string to_json() const;
};

// Random instance with symmetric Dirichlet(1) rows and prior, losses uniform
// in [0, l_max]; deterministic function of the mixed seed.
FiniteISDM random_instance(std::uint64_t mixed_seed, const FuzzConfig& config);

// Runs every bound operation on random instances and compares against the
// exact enumeration oracles.  Violations are data, not errors.
FuzzSummary fuzz_soundness(const FuzzConfig& config);

}  // namespace lossbound
