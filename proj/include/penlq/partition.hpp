#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace penlq {

/// A 3-partition instance: n = 3m positive integers summing to m B.
struct ThreePartitionInstance {
  int m = 0;
  std::vector<std::int64_t> b;
  std::int64_t B = 0;

  /// Validates n = 3m, b_i > 0 and divisibility of the sum by m; throws
  /// InvalidInstance otherwise.
  static ThreePartitionInstance make(int m, std::vector<std::int64_t> b);

  std::size_t n() const { return b.size(); }
  std::int64_t total() const { return B * m; }
};

/// Assignment of the n items to m subsets. Item indices are 0-based.
struct Partition {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::int64_t> sums;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Builds a partition and its subset sums. Each subset is sorted; throws
/// InvalidInstance unless there are exactly m subsets covering 0..n-1 once.
Partition make_partition(const ThreePartitionInstance& tp,
                         std::vector<std::vector<std::size_t>> subsets);

/// assignment[i] is the subset of item i, in [0, m).
Partition partition_from_assignment(const ThreePartitionInstance& tp,
                                    const std::vector<std::size_t>& assignment);

/// Inverse of partition_from_assignment.
std::vector<std::size_t> assignment_of(const ThreePartitionInstance& tp, const Partition& part);

}  // namespace penlq
