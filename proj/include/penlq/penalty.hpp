#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "penlq/rational.hpp"

namespace penlq {

/// Builtin penalty families. `Linear` (the LASSO) never satisfies the hardness
/// conditions and exists as a negative control.
enum class Family {
  L0,
  BridgeLp,
  HardThreshold,
  SCAD,
  MCP,
  PiecewiseLinear,
  Fraction,
  Log,
  Linear,
};

std::string_view family_name(Family family);

/// Parses a lowercase family name. Accepts `clipped_l1` as an alias of
/// `piecewise_linear`; use PenaltySpec::make_named to get the parameter
/// translation as well.
Family family_from_name(std::string_view name);

using ParamMap = std::map<std::string, double>;

/// A penalty family together with validated parameters.
///
/// Parameter names: `p` (bridge exponent), `gamma`, `a` (SCAD slope ratio or
/// piecewise-linear breakpoint), `b` (MCP), `k1`, `k2` (piecewise-linear
/// slopes), `k` (linear slope). Missing parameters take the family default
/// (gamma = 1, SCAD a = 3, MCP b = 1, bridge p = 0.5, piecewise linear
/// k1 = 1, k2 = 0, a = 1, linear k = 1).
class PenaltySpec {
 public:
  /// Throws InvalidParameter on an unknown name or an out-of-range value.
  static PenaltySpec make(Family family, const ParamMap& params = {});
  /// Like make, but also understands the `clipped_l1` alias (parameter gamma).
  static PenaltySpec make_named(std::string_view name, const ParamMap& params = {});

  static PenaltySpec l0() { return make(Family::L0); }
  static PenaltySpec bridge(double p) { return make(Family::BridgeLp, {{"p", p}}); }
  static PenaltySpec hard_threshold(double gamma) {
    return make(Family::HardThreshold, {{"gamma", gamma}});
  }
  static PenaltySpec scad(double gamma, double a) {
    return make(Family::SCAD, {{"gamma", gamma}, {"a", a}});
  }
  static PenaltySpec mcp(double gamma, double b) {
    return make(Family::MCP, {{"gamma", gamma}, {"b", b}});
  }
  static PenaltySpec piecewise_linear(double k1, double k2, double a) {
    return make(Family::PiecewiseLinear, {{"k1", k1}, {"k2", k2}, {"a", a}});
  }
  /// gamma * min(t, gamma).
  static PenaltySpec clipped_l1(double gamma) { return piecewise_linear(gamma, 0.0, gamma); }
  static PenaltySpec fraction(double gamma) { return make(Family::Fraction, {{"gamma", gamma}}); }
  static PenaltySpec log(double gamma) { return make(Family::Log, {{"gamma", gamma}}); }
  static PenaltySpec linear(double k) { return make(Family::Linear, {{"k", k}}); }

  Family family() const { return family_; }
  /// Resolved parameters, defaults included.
  const ParamMap& params() const { return params_; }
  double param(const std::string& name) const;

  // Resolved parameters by role; meaningless for families that lack them.
  double gamma() const { return gamma_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }
  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double k() const { return k_; }

  /// Points of (0, inf) where the first derivative does not exist, ascending.
  std::vector<double> kinks() const;

  friend bool operator==(const PenaltySpec& a, const PenaltySpec& b) {
    return a.family_ == b.family_ && a.params_ == b.params_;
  }

 private:
  PenaltySpec() = default;

  Family family_ = Family::L0;
  ParamMap params_;
  // Cached copies of params_ for the evaluation hot path.
  double gamma_ = 1.0, a_ = 0.0, b_ = 1.0, p_ = 0.5, k1_ = 1.0, k2_ = 0.0, k_ = 1.0;
};

/// p(t) for t >= 0. p(0) = 0 for every family. Throws DomainError for t < 0.
double p_eval(const PenaltySpec& spec, double t);

/// Exact first and second derivatives for t > 0. Throws DomainError for
/// t <= 0 and NondifferentiablePoint at a kink.
double p_d1(const PenaltySpec& spec, double t);
double p_d2(const PenaltySpec& spec, double t);

/// The interval choice (tau0, tau) and the rational anchor tau_hat in between.
struct Radii {
  double tau = 0.0;
  double tau0 = 0.0;
  Rational tau_hat;
};

/// Per-family choice of tau, tau0 and tau_hat. [tau0, tau] always avoids the
/// kinks of the family, so p is twice continuously differentiable there.
Radii default_radii(const PenaltySpec& spec);

/// Proof constants attached to an accepted penalty.
struct PenaltyAnalysis {
  double tau = 0.0;
  double tau0 = 0.0;
  Rational tau_hat;
  /// (p(tau0/3) + p(2 tau0/3) - p(tau0)) / (tau0/3); positive iff p is not
  /// linear on [0, tau0].
  double C1 = 0.0;
  /// Upper bound on -p'' over [tau0, tau].
  double K = 0.0;
  /// True when K came from a closed form rather than from sampling.
  bool K_exact = false;

  double tau_hat_value() const { return tau_hat.value(); }
};

/// C1 for a given tau0.
double localization_constant(const PenaltySpec& spec, double tau0);

/// Computes tau, tau0, tau_hat, C1 and K. Throws ConditionViolation when
/// C1 <= 1e-12, i.e. p is linear on [0, tau0] (always the case for Linear).
PenaltyAnalysis analyze(const PenaltySpec& spec);

}  // namespace penlq
