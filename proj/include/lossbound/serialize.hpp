#pragma once
#include <string>

#include "lossbound/bounds.hpp"
#include "lossbound/isdm.hpp"

namespace lossbound {

// Instance file schema:
//   {"prior": [...], "obs_laws": [[...], ...], "loss": [[...], ...],
//    "l_max": <number>, "labels": {"models": [...], "outcomes": [...]}}
// "labels" is optional.  Parse errors and schema violations throw
// std::runtime_error with a message naming the offending field.
FiniteISDM parse_instance_json(const std::string& text);
FiniteISDM load_instance(const std::string& path);
std::string instance_to_json(const FiniteISDM& instance);

// Bandit spec schema:
//   {"arms": K, "horizon": T, "reward_values": [[...] per arm],
//    "reward_probs": [[[...] per arm] per model], "prior": [...],
//    "policy": {"kind": "uniform"}
//            | {"kind": "fixed", "arm": k}
//            | {"kind": "table", "entries": {"<prefix>": [...]}},
//    "loss_kind": "cumulative_regret", "transcript_cap": N}
// "loss_kind" and "transcript_cap" are optional.
BanditInstanceSpec parse_bandit_json(const std::string& text);
BanditInstanceSpec load_bandit_spec(const std::string& path);

// Reports: JSON with 17 significant digits for lossless round-trips; CSV as a
// header row plus one value row with the same numbers.
std::string report_to_json(const BoundReport& report);
std::string report_to_csv(const BoundReport& report);
std::string report_to_table(const BoundReport& report);  // 6-digit human form

}  // namespace lossbound
