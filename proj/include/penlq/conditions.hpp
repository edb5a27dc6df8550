#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "penlq/penalty.hpp"

namespace penlq {

/// Outcome of one grid check. A failing check always carries the violating
/// points in `witness`.
struct CheckResult {
  bool pass = true;
  std::vector<double> witness;
  /// Check-specific magnitude: worst slack for monotone/concave, C1 for
  /// not-linear, largest second-derivative jump for smoothness.
  double measure = 0.0;
  std::string detail;
};

struct ConditionReport {
  int grid_n = 0;
  double tau = 0.0;
  double tau0 = 0.0;
  CheckResult monotone;
  CheckResult concave_on_0_tau;
  CheckResult not_linear;
  CheckResult smooth_near_tau;
  bool overall = false;
};

/// Grid verification of the hardness conditions:
///  - p non-decreasing on a uniform grid of [0, 2 tau];
///  - midpoint concavity on a uniform grid of [0, tau];
///  - not linear: C1 > 1e-12;
///  - p'' continuous on [tau0, tau]: no family kink inside, and finite
///    difference second derivatives taken just left and right of every grid
///    point differ by less than 1e-3 (1 + K).
/// Deterministic. Throws DomainError when grid_n < 100.
ConditionReport check_theorem1(const PenaltySpec& spec, int grid_n);

/// sum p(|t_i|) >= min{p(|sum t_i|), p(tau)} up to 1e-12 relative slack.
/// Throws DomainError when fewer than two values are given.
bool verify_lemma1(const PenaltySpec& spec, std::span<const double> t);

enum class Lemma2Verdict {
  HypothesisFails,      // sum p(|t_i|) >= p(t~) + C1 delta: nothing to check
  ConcentratedOK,       // one |t_i - t~| <= delta, every other |t_j| <= delta
  CounterexampleFound,  // the localization claim is false for this input
};

std::string_view to_string(Lemma2Verdict v);

/// Localization check around t_tilde. Requires t_tilde in (tau0, tau),
/// delta in (0, min{tau0/3, t_tilde - tau0, tau - t_tilde}), at least two
/// values, and sum t = t_tilde to 1e-12; otherwise throws DomainError.
Lemma2Verdict verify_lemma2(const PenaltySpec& spec, const PenaltyAnalysis& analysis,
                            double t_tilde, double delta, std::span<const double> t);

struct Lemma1FuzzReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  std::vector<double> first_violation;  // empty when none
};

struct Lemma2FuzzReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t hypothesis_fails = 0;
  std::uint64_t concentrated = 0;
  std::uint64_t counterexamples = 0;
  /// {t_tilde, delta, t_1, ..., t_l} of the lowest-index counterexample.
  std::vector<double> first_counterexample;
};

/// Random lists of 2..6 entries uniform in [-2 tau, 2 tau]. Trial i draws from
/// its own stream derived from (seed, i), so the report does not depend on the
/// thread count.
Lemma1FuzzReport fuzz_lemma1(const PenaltySpec& spec, std::uint64_t trials, std::uint64_t seed);

/// Random admissible (t_tilde, delta) and random decompositions of t_tilde:
/// Dirichlet splits with random concentration plus zero-sum noise, and
/// near-concentrated splits probing the delta boundary.
Lemma2FuzzReport fuzz_lemma2(const PenaltySpec& spec, std::uint64_t trials, std::uint64_t seed);

}  // namespace penlq
