#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "penlq/decode.hpp"
#include "penlq/error.hpp"
#include "penlq/solver.hpp"

using namespace penlq;

namespace {

ReductionInstance demo(double q = 2.0) {
  return build(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3}), PenaltySpec::mcp(1.0, 1.0),
               q, 1.0);
}

// Every partition of n items into m labelled subsets, as assignments.
std::vector<std::vector<std::size_t>> all_assignments(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  while (true) {
    out.push_back(a);
    std::size_t k = 0;
    while (k < n && ++a[k] == m) a[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("rounding the certificate is the identity") {
  const ReductionInstance red = demo();
  const Partition p = make_partition(red.tp, {{0, 1, 2}, {3, 4, 5}});
  const SolutionMatrix x = encode_certificate(red, p);
  const RoundedSolution r = round_solution(red, x);
  CHECK(r.y.entries == x.entries);
  CHECK(r.chosen_column == std::vector<std::size_t>{0, 0, 0, 1, 1, 1});
  CHECK(to_partition(red, r) == p);
  CHECK(to_partition(red, r).sums == std::vector<std::int64_t>{6, 6});
}

TEST_CASE("round trip over every assignment of the demo instance") {
  for (double q : {1.0, 2.0}) {
    const ReductionInstance red = demo(q);
    for (const auto& a : all_assignments(6, 2)) {
      const Partition p = partition_from_assignment(red.tp, a);
      CHECK(to_partition(red, round_solution(red, encode_certificate(red, p))) == p);
    }
  }
}

TEST_CASE("non-equitable assignment") {
  const ReductionInstance red = demo();
  const Partition p = make_partition(red.tp, {{0, 1, 3}, {2, 4, 5}});
  CHECK(p.sums == std::vector<std::int64_t>{4, 8});
  CHECK_FALSE(verify_equitable(red.tp, p));
  CHECK(verify_equitable(red.tp, make_partition(red.tp, {{0, 1, 2}, {3, 4, 5}})));
  const auto one = ThreePartitionInstance::make(1, {7, 1, 1});
  CHECK(verify_equitable(one, make_partition(one, {{0, 1, 2}})));
  Partition broken = p;
  broken.subsets[1].pop_back();
  CHECK_THROWS_AS(verify_equitable(red.tp, broken), InvalidInstance);
}

TEST_CASE("rounding failures name the row") {
  const ReductionInstance red = demo();
  SolutionMatrix x = encode_certificate(red, make_partition(red.tp, {{0, 1, 2}, {3, 4, 5}}));
  SUBCASE("two entries at t*") {
    x.at(3, 0) = red.ganalysis.t_star;
    try {
      round_solution(red, x);
      FAIL("expected RoundingFailure");
    } catch (const RoundingFailure& e) {
      CHECK(e.row() == 3);
    }
  }
  SUBCASE("dead zone") {
    x.at(4, 0) = 0.3;
    try {
      round_solution(red, x);
      FAIL("expected RoundingFailure");
    } catch (const RoundingFailure& e) {
      CHECK(e.row() == 4);
    }
  }
  SUBCASE("no entry near t*") {
    x.at(5, 1) = 0.0;
    try {
      round_solution(red, x);
      FAIL("expected RoundingFailure");
    } catch (const RoundingFailure& e) {
      CHECK(e.row() == 5);
    }
  }
  SUBCASE("shape") { CHECK_THROWS_AS(round_solution(red, SolutionMatrix(6, 3)), DimensionMismatch); }
}

TEST_CASE("decide") {
  const ReductionInstance red = demo();
  const Partition p = make_partition(red.tp, {{0, 1, 2}, {3, 4, 5}});
  const Decision yes = decide(red, encode_certificate(red, p));
  CHECK(yes.verdict == Verdict::Yes);
  REQUIRE(yes.partition);
  CHECK(*yes.partition == p);
  CHECK(yes.max_sum_gap < 1e-12);

  const Decision zero = decide(red, SolutionMatrix(6, 2));
  CHECK(zero.verdict == Verdict::Unknown);
  CHECK_FALSE(zero.partition);
  CHECK(zero.value >= zero.threshold);

  const Partition w = make_partition(red.tp, {{0, 1, 3}, {2, 4, 5}});
  CHECK(decide(red, encode_certificate(red, w)).verdict == Verdict::Unknown);

  const SolveResult s = minimize_structured(red);
  const Decision ds = decide(red, s.x);
  CHECK(ds.verdict == Verdict::Yes);
  CHECK(verify_equitable(red.tp, *ds.partition));
}

TEST_CASE("perturbed certificates decode to the original partition") {
  const ReductionInstance red = demo();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (const auto& a : all_assignments(6, 2)) {
    const Partition p = partition_from_assignment(red.tp, a);
    if (!verify_equitable(red.tp, p)) continue;
    const SolutionMatrix cert = encode_certificate(red, p);
    for (int trial = 0; trial < 100; ++trial) {
      SolutionMatrix x = cert;
      for (double& v : x.entries) v += red.delta * u(rng) * (1.0 - 1e-12);
      CHECK(to_partition(red, round_solution(red, x)) == p);
    }
  }
}

TEST_CASE("near-optimal perturbations decide Yes with a small gap bound") {
  // Rejection sampling: keep perturbations whose objective is still below
  // bound + epsilon, which is exactly the decoder's hypothesis.
  for (double q : {1.0, 2.0}) {
    const ReductionInstance red = demo(q);
    const Partition p = make_partition(red.tp, {{0, 1, 2}, {3, 4, 5}});
    const SolutionMatrix cert = encode_certificate(red, p);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int accepted = 0, attempts = 0;
    while (accepted < 1000 && attempts < 200000) {
      ++attempts;
      SolutionMatrix x = cert;
      const double scale = red.delta * std::pow(10.0, -6.0 * std::abs(u(rng)));
      for (double& v : x.entries) v += scale * u(rng);
      if (!(objective(red, x) < optimal_bound(red) + red.epsilon)) continue;
      ++accepted;
      const Decision d = decide(red, x);
      REQUIRE(d.verdict == Verdict::Yes);
      CHECK(verify_equitable(red.tp, *d.partition));
      CHECK(d.max_sum_gap < 1.0);
    }
    CAPTURE(q);
    CHECK(accepted == 1000);
  }
}
