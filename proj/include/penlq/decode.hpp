#pragma once

#include <optional>
#include <vector>

#include "penlq/partition.hpp"
#include "penlq/reduction.hpp"

namespace penlq {

/// A solution snapped onto {0, t*}: exactly one t* per item row.
struct RoundedSolution {
  SolutionMatrix y;
  std::vector<std::size_t> chosen_column;
};

/// Per row, the single entry within 2 delta of t* becomes t* and the entries
/// within delta of zero become 0. Throws RoundingFailure naming the first row
/// with no near-t* entry, several of them, or an entry in neither band.
RoundedSolution round_solution(const ReductionInstance& red, const SolutionMatrix& x);

Partition to_partition(const ReductionInstance& red, const RoundedSolution& rounded);

/// True iff every subset sums to B. Throws InvalidInstance if the partition
/// does not cover the items of tp exactly once.
bool verify_equitable(const ThreePartitionInstance& tp, const Partition& partition);

enum class Verdict { Yes, Unknown };

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::optional<Partition> partition;
  double value = 0.0;
  /// optimal_bound + epsilon; a Yes needs value strictly below it.
  double threshold = 0.0;
  /// Largest (1/t*)(sum_i b_i |y_ij - x_ij| + sum_i b_i |y_i1 - x_i1|
  ///   + |sum_i b_i x_ij - sum_i b_i x_i1|) over subsets j: the real-valued
  /// bound on the subset-sum difference before integrality is used. Below 1
  /// on every Yes.
  double max_sum_gap = 0.0;
};

/// Yes with an equitable partition when objective(x) < bound + epsilon,
/// Unknown otherwise. Throws TheoremViolation if a solution under the
/// threshold fails to round, or rounds to a non-equitable partition.
Decision decide(const ReductionInstance& red, const SolutionMatrix& x);

}  // namespace penlq
