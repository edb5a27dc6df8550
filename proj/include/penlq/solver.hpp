#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "penlq/reduction.hpp"

namespace penlq {

struct SolveResult {
  SolutionMatrix x;
  /// objective(x), recomputed from the materialized instance.
  double value = 0.0;
  /// value - optimal_bound
  double gap = 0.0;
  std::uint64_t assignments_explored = 0;
  /// Number of explored assignments whose subset sums are all equal, i.e.
  /// that attain the bound exactly.
  std::uint64_t equitable_assignments = 0;
  /// Subset of each item in the best structured assignment.
  std::vector<std::size_t> assignment;
  std::uint64_t seed = 0;
};

/// Largest m^n the enumerator accepts.
inline constexpr std::uint64_t kMaxAssignments = 10'000'000;

/// Enumerates every assignment of items to subsets (x_ij = t* on the assigned
/// subset, 0 elsewhere) and keeps the lowest objective. Assignments are
/// numbered in mixed radix m with item 0 as the least significant digit; ties
/// go to the lowest number, so the result does not depend on the thread count.
/// Throws SizeError when m^n > kMaxAssignments.
SolveResult minimize_structured(const ReductionInstance& red);

struct DescentConfig {
  /// Half-width of the per-coordinate search interval around the current value.
  double step = 0.05;
  int max_iters = 200;
  /// Stop once a full sweep lowers the objective by less than this.
  double tol = 1e-13;
};

/// Cyclic coordinate descent: each coordinate is moved to the best of a
/// golden-section search over [x_k - step, x_k + step], the point 0 (when in
/// range) and its current value. The objective never increases.
std::vector<double> local_descent(const ProblemInstance& problem, std::span<const double> x0,
                                  const DescentConfig& cfg = {});

enum class SolveMode { Structured, Hybrid };

struct SolveBudget {
  SolveMode mode = SolveMode::Structured;
  /// Hybrid only: number of polishing runs. The first starts from the best
  /// structured assignment, later ones from seeded perturbations of it.
  int restarts = 1;
  std::uint64_t seed = 0;
};

/// Structured enumeration, optionally followed by local descent. The hybrid
/// value is never worse than the structured one; restarts = 0 makes the two
/// modes identical.
SolveResult solve(const ReductionInstance& red, const SolveBudget& budget);

}  // namespace penlq
