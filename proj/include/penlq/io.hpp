#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "penlq/conditions.hpp"
#include "penlq/decode.hpp"
#include "penlq/g_analysis.hpp"
#include "penlq/reduction.hpp"
#include "penlq/solver.hpp"

namespace penlq::io {

using nlohmann::json;

// Every reader throws InvalidInstance (or the validating constructor's own
// error) on malformed input.

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// {"family": "mcp", "params": {"gamma": 1.0, "b": 1.0}}
json to_json(const PenaltySpec& spec);
PenaltySpec penalty_from_json(const json& doc);

/// {"m": 2, "b": [1, 2, 3, 1, 2, 3]}
json to_json(const ThreePartitionInstance& tp);
ThreePartitionInstance tp_from_json(const json& doc);

/// Subsets as lists of 1-based item indices.
json partition_to_json(const Partition& partition);
Partition partition_from_json(const ThreePartitionInstance& tp, const json& doc);

json to_json(const ConditionReport& report);
json to_json(const Lemma1FuzzReport& report);
json to_json(const Lemma2FuzzReport& report);

/// {theta, mu, tau_hat, t_star, h, delta_bar, theta_lower, mu_lower} plus
/// the exact roots and tau_hat as rational strings.
json to_json(const GSetup& setup);

/// Materialized instance: {"rows", "cols", "A" (row-major), "target",
/// "lambda", "q", "tp", "penalty", "grid_exp", "meta": {"theta", "mu",
/// "tau_hat", "t_star", "h", "delta", "epsilon", "bound", ...}}.
json instance_to_json(const ReductionInstance& red, int grid_exp = 20);

/// Rebuilds the reduction from tp, penalty, q, lambda and grid_exp, and
/// checks that the stored A and target match it bit for bit.
ReductionInstance instance_from_json(const json& doc);

/// {"x": [...], "value": v, "gap": g, "assignments_explored": k, "seed": s}
json solution_to_json(const SolveResult& result);
SolutionMatrix solution_from_json(const ReductionInstance& red, const json& doc);

/// {"verdict": "yes" | "unknown", "partition": [...], "sums": [...], ...}
json to_json(const Decision& decision);

}  // namespace penlq::io
