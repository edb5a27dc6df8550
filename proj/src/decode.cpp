#include "penlq/decode.hpp"

#include <cmath>
#include <sstream>

#include "penlq/error.hpp"

namespace penlq {

RoundedSolution round_solution(const ReductionInstance& red, const SolutionMatrix& x) {
  if (x.n != red.n() || x.m != red.m()) {
    throw DimensionMismatch("round_solution: solution shape does not match the instance");
  }
  const double t_star = red.ganalysis.t_star;
  const double delta = red.delta;
  RoundedSolution out;
  out.y = SolutionMatrix(red.n(), red.m());
  out.chosen_column.resize(red.n());
  for (std::size_t i = 0; i < red.n(); ++i) {
    std::size_t near_count = 0;
    std::size_t chosen = 0;
    for (std::size_t j = 0; j < red.m(); ++j) {
      const double v = x.at(i, j);
      if (std::abs(v - t_star) < 2.0 * delta) {
        ++near_count;
        chosen = j;
      } else if (!(std::abs(v) <= delta)) {
        std::ostringstream os;
        os << "round_solution: row " << i << ", column " << j << ": x = " << v
           << " is neither within 2 delta of t* = " << t_star << " nor within delta = " << delta
           << " of 0";
        throw RoundingFailure(i, os.str());
      }
    }
    if (near_count != 1) {
      std::ostringstream os;
      os << "round_solution: row " << i << " has " << near_count
         << " entries within 2 delta of t* (need exactly one)";
      throw RoundingFailure(i, os.str());
    }
    out.y.at(i, chosen) = t_star;
    out.chosen_column[i] = chosen;
  }
  return out;
}

Partition to_partition(const ReductionInstance& red, const RoundedSolution& rounded) {
  return partition_from_assignment(red.tp, rounded.chosen_column);
}

bool verify_equitable(const ThreePartitionInstance& tp, const Partition& partition) {
  const Partition checked = make_partition(tp, partition.subsets);
  for (std::int64_t s : checked.sums) {
    if (s != tp.B) return false;
  }
  return true;
}

Decision decide(const ReductionInstance& red, const SolutionMatrix& x) {
  Decision d;
  d.value = objective(red, x);
  d.threshold = optimal_bound(red) + red.epsilon;
  if (!(d.value < d.threshold)) return d;

  RoundedSolution rounded;
  try {
    rounded = round_solution(red, x);
  } catch (const RoundingFailure& e) {
    throw TheoremViolation(std::string("objective is below bound + epsilon but ") + e.what());
  }
  Partition part = to_partition(red, rounded);

  const double t_star = red.ganalysis.t_star;
  const auto& b = red.tp.b;
  for (std::size_t j = 1; j < red.m(); ++j) {
    double drift = 0.0;
    double balance = 0.0;
    for (std::size_t i = 0; i < red.n(); ++i) {
      const double bi = static_cast<double>(b[i]);
      drift += bi * (std::abs(rounded.y.at(i, j) - x.at(i, j)) +
                     std::abs(rounded.y.at(i, 0) - x.at(i, 0)));
      balance += bi * (x.at(i, j) - x.at(i, 0));
    }
    d.max_sum_gap = std::max(d.max_sum_gap, (drift + std::abs(balance)) / t_star);
  }
  if (!(d.max_sum_gap < 1.0) || !verify_equitable(red.tp, part)) {
    std::ostringstream os;
    os << "objective " << d.value << " is below bound + epsilon = " << d.threshold
       << " but the decoded partition is not equitable (sum gap bound " << d.max_sum_gap << ")";
    throw TheoremViolation(os.str());
  }
  d.verdict = Verdict::Yes;
  d.partition = std::move(part);
  return d;
}

}  // namespace penlq
