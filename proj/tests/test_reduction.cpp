#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "penlq/error.hpp"
#include "penlq/reduction.hpp"

using namespace penlq;

namespace {

constexpr double kMcpH = 0.941323155216284987;
constexpr double kMcpBound = 5.64793893129770992;

ReductionInstance demo() {
  return build(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3}), PenaltySpec::mcp(1.0, 1.0),
               2.0, 1.0);
}

double direct(const ReductionInstance& red, const std::function<double(double)>& p,
              const std::vector<double>& x) {
  return oracle::reduction_objective(red.tp.b, red.tp.m, red.problem.q, red.problem.lambda,
                                     red.gparams.theta, red.gparams.mu,
                                     red.gparams.tau_hat.value(), p, x);
}

}  // namespace

TEST_CASE("three-partition instances") {
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  CHECK(tp.B == 6);
  CHECK(tp.n() == 6);
  CHECK(tp.total() == 12);
  CHECK_THROWS_AS(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 4}), InvalidInstance);
  CHECK_THROWS_AS(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2}), InvalidInstance);
  CHECK_THROWS_AS(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 0}), InvalidInstance);
  CHECK_THROWS_AS(ThreePartitionInstance::make(0, {}), InvalidInstance);
  CHECK_NOTHROW(ThreePartitionInstance::make(1, {4, 5, 6}));
}

TEST_CASE("partitions") {
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  const Partition p = make_partition(tp, {{2, 1, 0}, {3, 4, 5}});
  CHECK(p.subsets[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.sums == std::vector<std::int64_t>{6, 6});
  const Partition w = make_partition(tp, {{0, 1, 3}, {2, 4, 5}});
  CHECK(w.sums == std::vector<std::int64_t>{4, 8});
  CHECK(partition_from_assignment(tp, assignment_of(tp, w)) == w);
  CHECK_THROWS_AS(make_partition(tp, {{0, 1, 2}, {3, 4}}), InvalidInstance);
  CHECK_THROWS_AS(make_partition(tp, {{0, 1, 2}, {2, 3, 4, 5}}), InvalidInstance);
  CHECK_THROWS_AS(make_partition(tp, {{0, 1, 2, 3, 4, 5}}), InvalidInstance);
  CHECK_THROWS_AS(make_partition(tp, {{0, 1, 2}, {3, 4, 9}}), InvalidInstance);
}

TEST_CASE("materialized demo instance") {
  const ReductionInstance red = demo();
  const DenseMatrix& A = red.problem.A;
  CHECK(A.rows() == 13);
  CHECK(A.cols() == 12);
  CHECK(red.gparams.root_theta.value() == 1.0);
  CHECK(red.gparams.root_mu.value() == 14.0);

  std::set<double> coeffs(A.data().begin(), A.data().end());
  CHECK(coeffs == std::set<double>{-3, -2, -1, 0, 1, 2, 3, 14});

  // Balance row: +b_i on column (i, 1), -b_i on column (i, 0).
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(A(0, red.column(i, 1)) == red.tp.b[i]);
    CHECK(A(0, red.column(i, 0)) == -red.tp.b[i]);
  }
  for (std::size_t r = 0; r < 7; ++r) CHECK(red.problem.target[r] == 0.0);
  for (std::size_t r = 7; r < 13; ++r) CHECK(red.problem.target[r] == doctest::Approx(9.8));

  CHECK(red.delta == std::min(0.6 / 96.0, red.ganalysis.delta_bar));
  CHECK(red.delta == doctest::Approx(0.00625).epsilon(1e-12));
  CHECK(red.epsilon == std::min(red.delta * red.delta, 0.09));
  CHECK(red.epsilon == doctest::Approx(3.90625e-5).epsilon(1e-12));
  CHECK(std::abs(optimal_bound(red) - kMcpBound) < 1e-9);
  CHECK(optimal_bound(red) == 6.0 * red.ganalysis.h);
}

TEST_CASE("objective examples") {
  const ReductionInstance red = demo();
  const auto tp = red.tp;
  const double cert =
      objective(red, encode_certificate(red, make_partition(tp, {{0, 1, 2}, {3, 4, 5}})));
  CHECK(std::abs(cert - 6.0 * kMcpH) < 1e-9);

  CHECK(objective(red, SolutionMatrix(6, 2)) == doctest::Approx(6 * 196 * 0.49).epsilon(1e-12));

  const double wrong =
      objective(red, encode_certificate(red, make_partition(tp, {{0, 1, 3}, {2, 4, 5}})));
  const double ts = red.ganalysis.t_star;
  CHECK(wrong == doctest::Approx(optimal_bound(red) + 16.0 * ts * ts).epsilon(1e-12));
  CHECK(wrong > optimal_bound(red));

  CHECK_THROWS_AS(objective(red, SolutionMatrix(6, 3)), DimensionMismatch);
  CHECK_THROWS_AS(objective(red.problem, std::vector<double>(11, 0.0)), DimensionMismatch);
}

TEST_CASE("single-subset instances") {
  const auto tp = ThreePartitionInstance::make(1, {4, 5, 6});
  const ReductionInstance red = build(tp, PenaltySpec::mcp(1.0, 1.0), 2.0, 1.0);
  CHECK(red.problem.A.rows() == 6);
  CHECK(red.problem.A.cols() == 3);
  const SolutionMatrix x = encode_certificate(red, make_partition(tp, {{0, 1, 2}}));
  for (double v : x.entries) CHECK(v == red.ganalysis.t_star);
  CHECK(std::abs(objective(red, x) - optimal_bound(red)) < 1e-12);
}

TEST_CASE("q = 1 omits the theta rows") {
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  const ReductionInstance red = build(tp, PenaltySpec::mcp(1.0, 1.0), 1.0, 1.0);
  CHECK(red.gparams.theta == 0.0);
  CHECK(red.problem.A.rows() == 1 + 6);
  CHECK(red.ganalysis.t_star == 0.7);
  const SolutionMatrix x = encode_certificate(red, make_partition(tp, {{0, 1, 2}, {3, 4, 5}}));
  CHECK(std::abs(objective(red, x) - optimal_bound(red)) < 1e-12);
}

TEST_CASE("build rejects bad inputs") {
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  CHECK_THROWS_AS(build(tp, PenaltySpec::linear(1.0), 2.0, 1.0), ConditionViolation);
  CHECK_THROWS_AS(build(tp, PenaltySpec::linear(-1.0), 2.0, 1.0), ConditionViolation);
  CHECK_THROWS_AS(build(tp, PenaltySpec::mcp(1.0, 1.0), 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(build(tp, PenaltySpec::mcp(1.0, 1.0), 2.0, 0.0), DomainError);
  const auto other = ThreePartitionInstance::make(1, {1, 1, 1});
  const ReductionInstance red = build(tp, PenaltySpec::mcp(1.0, 1.0), 2.0, 1.0);
  CHECK_THROWS_AS(encode_certificate(red, make_partition(other, {{0, 1, 2}})), InvalidInstance);
}

TEST_CASE("bound scales linearly in lambda and n") {
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  const auto spec = PenaltySpec::mcp(1.0, 1.0);
  const ReductionInstance a = build(tp, spec, 2.0, 1.0);
  const auto tp2 = ThreePartitionInstance::make(4, {1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3});
  const ReductionInstance b = build(tp2, spec, 2.0, 1.0);
  CHECK(optimal_bound(b) == doctest::Approx(2.0 * optimal_bound(a)).epsilon(1e-14));
  // Doubling lambda keeps theta and mu at 1 and 196 only if their roots stay
  // rational, so compare against n lambda h of each instance.
  const ReductionInstance c = build(tp, spec, 2.0, 2.0);
  CHECK(optimal_bound(c) == doctest::Approx(6.0 * 2.0 * c.ganalysis.h).epsilon(1e-15));
}

TEST_CASE("matrix objective equals the term-by-term formula") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  for (const auto& np : fixtures::accepted_penalties()) {
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      CAPTURE(np.name);
      CAPTURE(q);
      const ReductionInstance red = build(tp, np.spec, q, 0.7);
      SolutionMatrix x(red.n(), red.m());
      int bad = 0;
      for (int trial = 0; trial < 125; ++trial) {
        for (double& v : x.entries) v = u(rng);
        const double a = objective(red, x);
        const double b = direct(red, np.reference, x.entries);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(b))) ++bad;
      }
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("coefficients are bounded and independent of the instance") {
  const auto spec = PenaltySpec::scad(1.0, 3.0);
  const ReductionInstance a = build(ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3}), spec, 2.0, 1.0);
  const ReductionInstance b =
      build(ThreePartitionInstance::make(3, {5, 6, 7, 5, 6, 7, 5, 6, 7}), spec, 2.0, 1.0);
  CHECK(a.gparams.root_theta == b.gparams.root_theta);
  CHECK(a.gparams.root_mu == b.gparams.root_mu);
  for (const ReductionInstance* red : {&a, &b}) {
    std::set<double> allowed = {0.0, red->gparams.root_theta.value(), red->gparams.root_mu.value()};
    for (auto v : red->tp.b) {
      allowed.insert(static_cast<double>(v));
      allowed.insert(-static_cast<double>(v));
    }
    for (double v : red->problem.A.data()) CHECK(allowed.count(v) == 1);
    CHECK(red->gparams.root_theta.exp <= 20);
    CHECK(red->gparams.root_mu.exp <= 20);
  }
}

TEST_CASE("objective never drops below the bound") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  for (const auto& np : fixtures::accepted_penalties()) {
    for (double q : {1.0, 2.0}) {
      const ReductionInstance red = build(tp, np.spec, q, 1.0);
      const double ts = red.ganalysis.t_star;
      const double bound = optimal_bound(red);
      SolutionMatrix x(red.n(), red.m());
      int bad = 0;
      for (int trial = 0; trial < 10000 / 16; ++trial) {
        // Mix of wide random points and points near {0, t*} patterns.
        const bool local = trial % 2 == 0;
        for (double& v : x.entries) {
          v = local ? (u(rng) < 0.5 ? 0.0 : ts) + 0.05 * (u(rng) - 0.5) : 2.0 * (u(rng) - 0.3);
        }
        if (objective(red, x) < bound - 1e-9) ++bad;
      }
      CAPTURE(np.name);
      CHECK(bad == 0);
    }
  }
}
