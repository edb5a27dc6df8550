#include "penlq/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "penlq/error.hpp"

namespace penlq {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::L0, "l0"},
    {Family::BridgeLp, "bridge"},
    {Family::HardThreshold, "hard_threshold"},
    {Family::SCAD, "scad"},
    {Family::MCP, "mcp"},
    {Family::PiecewiseLinear, "piecewise_linear"},
    {Family::Fraction, "fraction"},
    {Family::Log, "log"},
    {Family::Linear, "linear"},
};

ParamMap defaults_for(Family family) {
  switch (family) {
    case Family::L0:
      return {};
    case Family::BridgeLp:
      return {{"p", 0.5}};
    case Family::HardThreshold:
    case Family::Fraction:
    case Family::Log:
      return {{"gamma", 1.0}};
    case Family::SCAD:
      return {{"gamma", 1.0}, {"a", 3.0}};
    case Family::MCP:
      return {{"gamma", 1.0}, {"b", 1.0}};
    case Family::PiecewiseLinear:
      return {{"k1", 1.0}, {"k2", 0.0}, {"a", 1.0}};
    case Family::Linear:
      return {{"k", 1.0}};
  }
  return {};
}

[[noreturn]] void bad_param(Family family, const std::string& msg) {
  throw InvalidParameter(std::string(family_name(family)) + ": " + msg);
}

double pos(double x) { return x > 0.0 ? x : 0.0; }

bool near_kink(double t, double kink) {
  return std::abs(t - kink) <= 1e-12 * std::max(1.0, std::abs(kink));
}

void require_smooth_point(const PenaltySpec& spec, double t, const char* op) {
  if (!(t > 0.0)) {
    std::ostringstream os;
    os << op << ": derivative needs t > 0, got " << t;
    throw DomainError(os.str());
  }
  for (double kink : spec.kinks()) {
    if (near_kink(t, kink)) {
      std::ostringstream os;
      os << op << ": " << family_name(spec.family()) << " is not differentiable at kink t = "
         << kink;
      throw NondifferentiablePoint(kink, os.str());
    }
  }
}

// Exact max of -p'' over [lo, hi] when the family admits a closed form and the
// interval avoids every kink.
std::optional<double> closed_form_curvature(const PenaltySpec& s, double lo, double hi) {
  const double g = s.gamma();
  switch (s.family()) {
    case Family::L0:
    case Family::PiecewiseLinear:
    case Family::Linear:
      return 0.0;
    case Family::BridgeLp:
      // -p'' = p(1-p) t^(p-2) is decreasing in t.
      return s.p() * (1.0 - s.p()) * std::pow(lo, s.p() - 2.0);
    case Family::HardThreshold:
      if (hi <= g) return 2.0;
      if (lo >= g) return 0.0;
      return std::nullopt;
    case Family::SCAD:
      if (lo >= g && hi <= s.a() * g) return 1.0 / (s.a() - 1.0);
      if (hi <= g || lo >= s.a() * g) return 0.0;
      return std::nullopt;
    case Family::MCP:
      if (hi <= s.b() * g) return 1.0 / s.b();
      if (lo >= s.b() * g) return 0.0;
      return std::nullopt;
    case Family::Fraction:
      return 2.0 * g * (g + 1.0) / std::pow(g + lo, 3.0);
    case Family::Log: {
      const double d = 1.0 + g * lo;
      return g * g / (d * d * std::log1p(g));
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& info : kFamilies) {
    if (info.family == family) return info.name;
  }
  return "unknown";
}

Family family_from_name(std::string_view name) {
  if (name == "clipped_l1") return Family::PiecewiseLinear;
  for (const auto& info : kFamilies) {
    if (info.name == name) return info.family;
  }
  throw InvalidParameter("unknown penalty family '" + std::string(name) + "'");
}

PenaltySpec PenaltySpec::make(Family family, const ParamMap& params) {
  PenaltySpec spec;
  spec.family_ = family;
  spec.params_ = defaults_for(family);
  for (const auto& [name, value] : params) {
    if (!spec.params_.contains(name)) bad_param(family, "unknown parameter '" + name + "'");
    if (!std::isfinite(value)) bad_param(family, "parameter '" + name + "' is not finite");
    spec.params_[name] = value;
  }
  const auto get = [&](const char* n) { return spec.params_.at(n); };

  switch (family) {
    case Family::L0:
      break;
    case Family::BridgeLp:
      spec.p_ = get("p");
      if (!(spec.p_ > 0.0 && spec.p_ < 1.0)) bad_param(family, "exponent p must lie in (0, 1)");
      break;
    case Family::HardThreshold:
    case Family::Fraction:
    case Family::Log:
      spec.gamma_ = get("gamma");
      if (!(spec.gamma_ > 0.0)) bad_param(family, "gamma must be > 0");
      break;
    case Family::SCAD:
      spec.gamma_ = get("gamma");
      spec.a_ = get("a");
      if (!(spec.gamma_ > 0.0)) bad_param(family, "gamma must be > 0");
      if (!(spec.a_ > 2.0)) bad_param(family, "a must be > 2");
      break;
    case Family::MCP:
      spec.gamma_ = get("gamma");
      spec.b_ = get("b");
      if (!(spec.gamma_ > 0.0)) bad_param(family, "gamma must be > 0");
      if (!(spec.b_ >= 1.0)) bad_param(family, "b must be >= 1");
      break;
    case Family::PiecewiseLinear:
      spec.k1_ = get("k1");
      spec.k2_ = get("k2");
      spec.a_ = get("a");
      if (!(spec.k2_ >= 0.0 && spec.k1_ > spec.k2_)) bad_param(family, "need k1 > k2 >= 0");
      if (!(spec.a_ > 0.0)) bad_param(family, "breakpoint a must be > 0");
      break;
    case Family::Linear:
      // Any finite slope; negative slopes serve as a non-monotone control.
      spec.k_ = get("k");
      break;
  }
  return spec;
}

PenaltySpec PenaltySpec::make_named(std::string_view name, const ParamMap& params) {
  if (name == "clipped_l1") {
    double gamma = 1.0;
    for (const auto& [key, value] : params) {
      if (key != "gamma") bad_param(Family::PiecewiseLinear, "clipped_l1 takes only gamma");
      gamma = value;
    }
    if (!(gamma > 0.0)) bad_param(Family::PiecewiseLinear, "gamma must be > 0");
    return clipped_l1(gamma);
  }
  return make(family_from_name(name), params);
}

double PenaltySpec::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) bad_param(family_, "no parameter '" + name + "'");
  return it->second;
}

std::vector<double> PenaltySpec::kinks() const {
  switch (family_) {
    case Family::HardThreshold:
      return {gamma_};
    case Family::SCAD:
      return {gamma_, a_ * gamma_};
    case Family::MCP:
      return {b_ * gamma_};
    case Family::PiecewiseLinear:
      return {a_};
    default:
      return {};
  }
}

double p_eval(const PenaltySpec& s, double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "p_eval: penalty is defined on [0, inf), got t = " << t;
    throw DomainError(os.str());
  }
  if (t == 0.0) return 0.0;
  const double g = s.gamma();
  switch (s.family()) {
    case Family::L0:
      return 1.0;
    case Family::BridgeLp:
      return std::pow(t, s.p());
    case Family::HardThreshold: {
      const double r = pos(g - t);
      return g * g - r * r;
    }
    case Family::SCAD: {
      const double a = s.a();
      if (t <= g) return g * t;
      if (t <= a * g) return (2.0 * a * g * t - t * t - g * g) / (2.0 * (a - 1.0));
      return (a + 1.0) * g * g / 2.0;
    }
    case Family::MCP: {
      const double b = s.b();
      if (t <= b * g) return g * t - t * t / (2.0 * b);
      return b * g * g / 2.0;
    }
    case Family::PiecewiseLinear:
      if (t <= s.a()) return s.k1() * t;
      return s.k2() * t + (s.k1() - s.k2()) * s.a();
    case Family::Fraction:
      return (g + 1.0) * t / (g + t);
    case Family::Log:
      return std::log1p(g * t) / std::log1p(g);
    case Family::Linear:
      return s.k() * t;
  }
  return 0.0;
}

double p_d1(const PenaltySpec& s, double t) {
  require_smooth_point(s, t, "p_d1");
  const double g = s.gamma();
  switch (s.family()) {
    case Family::L0:
      return 0.0;
    case Family::BridgeLp:
      return s.p() * std::pow(t, s.p() - 1.0);
    case Family::HardThreshold:
      return 2.0 * pos(g - t);
    case Family::SCAD:
      if (t < g) return g;
      return pos(s.a() * g - t) / (s.a() - 1.0);
    case Family::MCP:
      return pos(g - t / s.b());
    case Family::PiecewiseLinear:
      return t < s.a() ? s.k1() : s.k2();
    case Family::Fraction:
      return g * (g + 1.0) / ((g + t) * (g + t));
    case Family::Log:
      return g / ((1.0 + g * t) * std::log1p(g));
    case Family::Linear:
      return s.k();
  }
  return 0.0;
}

double p_d2(const PenaltySpec& s, double t) {
  require_smooth_point(s, t, "p_d2");
  const double g = s.gamma();
  switch (s.family()) {
    case Family::L0:
    case Family::PiecewiseLinear:
    case Family::Linear:
      return 0.0;
    case Family::BridgeLp:
      return s.p() * (s.p() - 1.0) * std::pow(t, s.p() - 2.0);
    case Family::HardThreshold:
      return t < g ? -2.0 : 0.0;
    case Family::SCAD:
      return (t > g && t < s.a() * g) ? -1.0 / (s.a() - 1.0) : 0.0;
    case Family::MCP:
      return t < s.b() * g ? -1.0 / s.b() : 0.0;
    case Family::Fraction:
      return -2.0 * g * (g + 1.0) / std::pow(g + t, 3.0);
    case Family::Log: {
      const double d = 1.0 + g * t;
      return -g * g / (d * d * std::log1p(g));
    }
  }
  return 0.0;
}

Radii default_radii(const PenaltySpec& s) {
  const double g = s.gamma();
  double tau = 1.0;
  double tau0 = 0.75;
  switch (s.family()) {
    case Family::L0:
      // p is constant on (0, inf); any radius works. Pinned so tau_hat = 7/10.
      return {1.0, 0.6, Rational{7, 10}};
    case Family::BridgeLp:
    case Family::Fraction:
    case Family::Log:
    case Family::Linear:
      break;
    case Family::HardThreshold:
      tau = 0.5 * g;
      tau0 = 0.375 * g;
      break;
    case Family::SCAD:
      // SCAD is linear on [0, gamma]; tau0 must pass gamma to pick up
      // curvature, and tau must stay below the kink at a*gamma.
      tau = 0.5 * (1.0 + s.a()) * g;
      tau0 = 0.375 * (1.0 + s.a()) * g;
      break;
    case Family::MCP: {
      const double r = std::min(g, s.b() * g);
      tau = 0.8 * r;
      tau0 = 0.6 * r;
      break;
    }
    case Family::PiecewiseLinear:
      tau = 2.0 * s.a();
      tau0 = 1.5 * s.a();
      break;
  }
  const double mid = 0.5 * (tau0 + tau);
  const double half_grid = std::ldexp(1.0, -21);
  return {tau, tau0, simplest_rational_between(mid - half_grid, mid + half_grid)};
}

double localization_constant(const PenaltySpec& spec, double tau0) {
  const double third = tau0 / 3.0;
  return (p_eval(spec, third) + p_eval(spec, 2.0 * tau0 / 3.0) - p_eval(spec, tau0)) / third;
}

PenaltyAnalysis analyze(const PenaltySpec& spec) {
  const Radii radii = default_radii(spec);
  PenaltyAnalysis out;
  out.tau = radii.tau;
  out.tau0 = radii.tau0;
  out.tau_hat = radii.tau_hat;
  out.C1 = localization_constant(spec, radii.tau0);
  if (!(out.C1 > 1e-12)) {
    std::ostringstream os;
    os << family_name(spec.family()) << " is linear on [0, " << radii.tau0 << "] (C1 = " << out.C1
       << "); the not-linear condition fails";
    throw ConditionViolation(os.str());
  }

  constexpr int kGrid = 1000;
  double sampled = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = radii.tau0 + (radii.tau - radii.tau0) * i / kGrid;
    sampled = std::max(sampled, -p_d2(spec, t));
  }
  if (auto exact = closed_form_curvature(spec, radii.tau0, radii.tau)) {
    out.K = std::max(*exact, sampled);
    out.K_exact = true;
  } else {
    out.K = 1.01 * sampled;
  }
  return out;
}

}  // namespace penlq
