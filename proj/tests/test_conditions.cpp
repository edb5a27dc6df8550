#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "penlq/conditions.hpp"
#include "penlq/error.hpp"

using namespace penlq;

TEST_CASE("every example penalty passes the condition check") {
  for (const auto& np : fixtures::all_penalties()) {
    CAPTURE(np.name);
    const ConditionReport r = check_theorem1(np.spec, 1000);
    CHECK(r.monotone.pass);
    CHECK(r.concave_on_0_tau.pass);
    CHECK(r.not_linear.pass);
    CHECK(r.smooth_near_tau.pass);
    CHECK(r.overall);
    CHECK(r.grid_n == 1000);
  }
}

TEST_CASE("linear penalty fails only the not-linear check") {
  const ConditionReport r = check_theorem1(PenaltySpec::linear(1.0), 1000);
  CHECK(r.monotone.pass);
  CHECK(r.concave_on_0_tau.pass);
  CHECK_FALSE(r.not_linear.pass);
  CHECK(std::abs(r.not_linear.measure) < 1e-12);
  CHECK_FALSE(r.not_linear.witness.empty());
  CHECK_FALSE(r.overall);
}

TEST_CASE("decreasing penalty fails monotonicity with a witness") {
  const ConditionReport r = check_theorem1(PenaltySpec::linear(-1.0), 200);
  CHECK_FALSE(r.monotone.pass);
  REQUIRE(r.monotone.witness.size() >= 2);
  const double s = r.monotone.witness[0], t = r.monotone.witness[1];
  CHECK(s < t);
  CHECK(-s > -t);
  CHECK_FALSE(r.overall);
}

TEST_CASE("overall is the conjunction of the sub-checks") {
  std::vector<PenaltySpec> specs = {PenaltySpec::linear(1.0), PenaltySpec::linear(-2.0),
                                    PenaltySpec::mcp(1.0, 1.0)};
  for (const auto& s : specs) {
    const ConditionReport r = check_theorem1(s, 150);
    CHECK(r.overall == (r.monotone.pass && r.concave_on_0_tau.pass && r.not_linear.pass &&
                        r.smooth_near_tau.pass));
  }
}

TEST_CASE("condition check is deterministic and validates the grid") {
  const auto a = check_theorem1(PenaltySpec::scad(1.0, 3.0), 500);
  const auto b = check_theorem1(PenaltySpec::scad(1.0, 3.0), 500);
  CHECK(a.smooth_near_tau.measure == b.smooth_near_tau.measure);
  CHECK(a.monotone.measure == b.monotone.measure);
  CHECK(a.concave_on_0_tau.measure == b.concave_on_0_tau.measure);
  CHECK_THROWS_AS(check_theorem1(PenaltySpec::l0(), 99), DomainError);
}

TEST_CASE("subadditivity examples") {
  const PenaltySpec mcp = PenaltySpec::mcp(1.0, 1.0);
  CHECK(verify_lemma1(PenaltySpec::l0(), std::vector<double>{0.1, -0.1}));
  CHECK(verify_lemma1(mcp, std::vector<double>{0.3, 0.3}));
  CHECK(verify_lemma1(mcp, std::vector<double>{5.0, -1.0}));
  CHECK(verify_lemma1(mcp, std::vector<double>{0.0, 0.0, 0.0}));
  CHECK_THROWS_AS(verify_lemma1(mcp, std::vector<double>{0.3}), DomainError);
  // Equality case: for a linear penalty both sides agree.
  CHECK(verify_lemma1(PenaltySpec::linear(1.0), std::vector<double>{0.25, 0.25}));
}

TEST_CASE("localization examples") {
  const PenaltySpec mcp = PenaltySpec::mcp(1.0, 1.0);
  const PenaltyAnalysis an = analyze(mcp);
  const auto v = [&](std::vector<double> t) { return verify_lemma2(mcp, an, 0.7, 0.04, t); };
  CHECK(v({0.7, 0.0, 0.0}) == Lemma2Verdict::ConcentratedOK);
  CHECK(v({0.0, 0.7}) == Lemma2Verdict::ConcentratedOK);
  CHECK(v({0.35, 0.35}) == Lemma2Verdict::HypothesisFails);

  // (0.69, 0.01): either branch is fine, decided by the closed form.
  const double lhs = oracle::mcp(0.69, 1, 1) + oracle::mcp(0.01, 1, 1);
  const double rhs = oracle::mcp(0.7, 1, 1) + an.C1 * 0.04;
  CHECK(v({0.69, 0.01}) ==
        (lhs < rhs ? Lemma2Verdict::ConcentratedOK : Lemma2Verdict::HypothesisFails));
  CHECK(to_string(Lemma2Verdict::CounterexampleFound) == "counterexample");
}

TEST_CASE("localization argument checks") {
  const PenaltySpec mcp = PenaltySpec::mcp(1.0, 1.0);
  const PenaltyAnalysis an = analyze(mcp);
  // delta must lie in (0, min(tau0/3, t~ - tau0, tau - t~)) = (0, 0.1).
  CHECK_THROWS_AS(verify_lemma2(mcp, an, 0.7, 0.2, std::vector<double>{0.7, 0.0}), DomainError);
  CHECK_THROWS_AS(verify_lemma2(mcp, an, 0.7, 0.0, std::vector<double>{0.7, 0.0}), DomainError);
  CHECK_THROWS_AS(verify_lemma2(mcp, an, 0.9, 0.01, std::vector<double>{0.9, 0.0}), DomainError);
  CHECK_THROWS_AS(verify_lemma2(mcp, an, 0.7, 0.04, std::vector<double>{0.5, 0.1}), DomainError);
  CHECK_THROWS_AS(verify_lemma2(mcp, an, 0.7, 0.04, std::vector<double>{0.7}), DomainError);
}

TEST_CASE("subadditivity fuzz finds no violation") {
  for (const auto& np : fixtures::all_penalties()) {
    CAPTURE(np.name);
    const Lemma1FuzzReport r = fuzz_lemma1(np.spec, 10000, 7);
    CHECK(r.trials == 10000);
    CHECK(r.violations == 0);
    CHECK(r.first_violation.empty());
  }
}

TEST_CASE("localization fuzz finds no counterexample and exercises both branches") {
  for (const auto& np : fixtures::all_penalties()) {
    CAPTURE(np.name);
    const Lemma2FuzzReport r = fuzz_lemma2(np.spec, 10000, 7);
    CHECK(r.counterexamples == 0);
    CHECK(r.hypothesis_fails + r.concentrated == r.trials);
    CHECK(r.concentrated > 0);
    CHECK(r.hypothesis_fails > 0);
  }
}

TEST_CASE("fuzz reports are reproducible and independent of thread count") {
  const PenaltySpec spec = PenaltySpec::log(1.0);
  const auto a = fuzz_lemma2(spec, 2000, 99);
  setenv("PENLQ_THREADS", "1", 1);
  const auto b = fuzz_lemma2(spec, 2000, 99);
  setenv("PENLQ_THREADS", "3", 1);
  const auto c = fuzz_lemma2(spec, 2000, 99);
  unsetenv("PENLQ_THREADS");
  CHECK(a.concentrated == b.concentrated);
  CHECK(a.concentrated == c.concentrated);
  CHECK(a.hypothesis_fails == c.hypothesis_fails);
  const auto d = fuzz_lemma2(spec, 2000, 100);
  CHECK(d.seed == 100);
}

TEST_CASE("a convex penalty yields localization counterexamples") {
  // Negative control: the fuzz harness can detect a false claim. For the
  // linear penalty the hypothesis never fails when all parts share a sign,
  // yet spread-out decompositions are common.
  const PenaltySpec lin = PenaltySpec::linear(1.0);
  PenaltyAnalysis fake;
  fake.tau = 1.0;
  fake.tau0 = 0.75;
  fake.tau_hat = Rational{7, 8};
  fake.C1 = 0.1;
  const auto v = verify_lemma2(lin, fake, 0.875, 0.05, std::vector<double>{0.4, 0.475});
  CHECK(v == Lemma2Verdict::CounterexampleFound);
}
