#include "penlq/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "penlq/error.hpp"

namespace penlq {

ThreePartitionInstance ThreePartitionInstance::make(int m, std::vector<std::int64_t> b) {
  if (m < 1) throw InvalidInstance("3-partition: m must be >= 1");
  if (b.size() != static_cast<std::size_t>(3 * m)) {
    throw InvalidInstance("3-partition: expected n = 3m = " + std::to_string(3 * m) +
                          " numbers, got " + std::to_string(b.size()));
  }
  std::int64_t sum = 0;
  for (std::int64_t v : b) {
    if (v <= 0) throw InvalidInstance("3-partition: numbers must be positive");
    sum += v;
  }
  if (sum % m != 0) {
    throw InvalidInstance("3-partition: sum " + std::to_string(sum) + " is not divisible by m = " +
                          std::to_string(m));
  }
  return {m, std::move(b), sum / m};
}

Partition make_partition(const ThreePartitionInstance& tp,
                         std::vector<std::vector<std::size_t>> subsets) {
  if (subsets.size() != static_cast<std::size_t>(tp.m)) {
    throw InvalidInstance("partition: expected " + std::to_string(tp.m) + " subsets, got " +
                          std::to_string(subsets.size()));
  }
  std::vector<int> seen(tp.n(), 0);
  Partition part;
  part.sums.assign(tp.m, 0);
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    std::sort(subsets[j].begin(), subsets[j].end());
    for (std::size_t i : subsets[j]) {
      if (i >= tp.n()) throw InvalidInstance("partition: item index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw InvalidInstance("partition: item " + std::to_string(i) + " appears twice");
      part.sums[j] += tp.b[i];
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InvalidInstance("partition: item " + std::to_string(i) + " is not assigned");
  }
  part.subsets = std::move(subsets);
  return part;
}

Partition partition_from_assignment(const ThreePartitionInstance& tp,
                                    const std::vector<std::size_t>& assignment) {
  if (assignment.size() != tp.n()) throw InvalidInstance("assignment: wrong length");
  std::vector<std::vector<std::size_t>> subsets(tp.m);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= static_cast<std::size_t>(tp.m)) {
      throw InvalidInstance("assignment: subset index out of range");
    }
    subsets[assignment[i]].push_back(i);
  }
  return make_partition(tp, std::move(subsets));
}

std::vector<std::size_t> assignment_of(const ThreePartitionInstance& tp, const Partition& part) {
  std::vector<std::size_t> out(tp.n(), 0);
  for (std::size_t j = 0; j < part.subsets.size(); ++j) {
    for (std::size_t i : part.subsets[j]) out.at(i) = j;
  }
  return out;
}

}  // namespace penlq
