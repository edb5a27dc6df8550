#include "penlq/g_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "penlq/error.hpp"

namespace penlq {

namespace {

double abs_pow(double v, double q) {
  const double a = std::abs(v);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

Dyadic normalized(std::int64_t num, int exp) {
  while (exp > 0 && num % 2 == 0 && num != 0) {
    num /= 2;
    --exp;
  }
  if (num == 0) exp = 0;
  return {num, exp};
}

// Smallest r = k / 2^e with r^q / lambda >= target.
Dyadic smallest_root(double target, double lambda, double q, int e) {
  if (target <= 0.0) return {0, 0};
  const double scale = std::ldexp(1.0, e);
  const auto power = [&](std::int64_t k) { return abs_pow(k / scale, q) / lambda; };
  auto k = static_cast<std::int64_t>(std::ceil(std::pow(lambda * target, 1.0 / q) * scale));
  while (k > 0 && power(k - 1) >= target) --k;
  while (power(k) < target) ++k;
  return normalized(k, e);
}

void check_params(const PenaltySpec& spec, const PenaltyAnalysis& an, const GParams& gp) {
  if (!(gp.tau_hat == an.tau_hat)) {
    throw PreconditionError("g parameters were built for tau_hat " + gp.tau_hat.str() +
                            ", analysis has " + an.tau_hat.str());
  }
  const GBounds b = bounds(spec, an, gp.q);
  const double rel = 1.0 - 1e-12;
  std::ostringstream os;
  if (gp.q > 1.0) {
    if (!(gp.theta >= b.theta_lower * rel)) {
      os << "theta = " << gp.theta << " below theta_lower = " << b.theta_lower;
    } else if (!(gp.mu >= b.mu_lower * gp.theta * rel)) {
      os << "mu = " << gp.mu << " below mu_lower * theta = " << b.mu_lower * gp.theta;
    }
  } else {
    if (gp.theta != 0.0) {
      os << "q = 1 requires theta = 0, got " << gp.theta;
    } else if (!(gp.mu >= b.mu_lower * rel)) {
      os << "mu = " << gp.mu << " below mu_lower = " << b.mu_lower;
    }
  }
  if (!os.str().empty()) throw PreconditionError(os.str());
}

}  // namespace

GBounds bounds(const PenaltySpec& spec, const PenaltyAnalysis& an, double q) {
  if (!(q >= 1.0)) throw DomainError("bounds: q must be >= 1");
  const double th = an.tau_hat_value();
  const double p_hat = p_eval(spec, th);
  if (q == 1.0) {
    return {0.0, std::max(1.0 + p_d1(spec, an.tau0), (p_hat + 1.0) / (th - an.tau0))};
  }
  const double m = std::min(std::pow(an.tau0, q - 2.0), std::pow(an.tau, q - 2.0));
  const double theta_lower = (1.0 + an.K) / (q * (q - 1.0) * m);
  const double mu_lower =
      (p_hat + theta_lower * abs_pow(th, q) + 1.0) / (theta_lower * abs_pow(an.tau0 - th, q));
  return {theta_lower, mu_lower};
}

GParams rationalize(double theta_lower, double mu_lower, double lambda, double q,
                    Rational tau_hat, int grid_exp) {
  if (!(lambda > 0.0)) throw DomainError("rationalize: lambda must be > 0");
  if (!(q >= 1.0)) throw DomainError("rationalize: q must be >= 1");
  GParams gp;
  gp.q = q;
  gp.lambda = lambda;
  gp.tau_hat = tau_hat;
  if (q == 1.0) {
    gp.root_theta = {0, 0};
    gp.theta = 0.0;
    gp.root_mu = smallest_root(mu_lower, lambda, q, grid_exp);
  } else {
    gp.root_theta = smallest_root(theta_lower, lambda, q, grid_exp);
    gp.theta = abs_pow(gp.root_theta.value(), q) / lambda;
    gp.root_mu = smallest_root(mu_lower * gp.theta, lambda, q, grid_exp);
    if (q == 2.0) {
      const double r = gp.root_mu.value();
      const double s = std::ceil(r);
      if (s * s <= 1.05 * r * r) gp.root_mu = {static_cast<std::int64_t>(s), 0};
    }
  }
  gp.mu = abs_pow(gp.root_mu.value(), q) / lambda;
  return gp;
}

double g_eval(const PenaltySpec& spec, const GParams& gp, double t) {
  return p_eval(spec, std::abs(t)) + gp.theta * abs_pow(t, gp.q) +
         gp.mu * abs_pow(t - gp.tau_hat.value(), gp.q);
}

GMinimum minimize_g(const PenaltySpec& spec, const PenaltyAnalysis& an, const GParams& gp,
                    double tol) {
  check_params(spec, an, gp);
  if (gp.q == 1.0) {
    const double th = an.tau_hat_value();
    return {th, p_eval(spec, th)};
  }
  const auto g = [&](double t) { return g_eval(spec, gp, t); };
  // Golden-section search; g is strictly convex on [tau0, tau].
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = an.tau0;
  double b = an.tau;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = g(c);
  double fd = g(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = g(d);
    }
  }
  const double t_star = 0.5 * (a + b);
  return {t_star, g(t_star)};
}

double delta_bar(const PenaltyAnalysis& an, double t_star) {
  if (!(t_star > an.tau0 && t_star < an.tau)) {
    std::ostringstream os;
    os << "delta_bar: t* = " << t_star << " outside (" << an.tau0 << ", " << an.tau << ")";
    throw DomainError(os.str());
  }
  return std::min({an.tau0 / 3.0, (t_star - an.tau0) / 2.0, (an.tau - t_star) / 2.0, 1.0, an.C1});
}

GSetup prepare_g(const PenaltySpec& spec, const PenaltyAnalysis& an, double q, double lambda,
                 int grid_exp) {
  const GBounds b = bounds(spec, an, q);
  GSetup out;
  out.params = rationalize(b.theta_lower, b.mu_lower, lambda, q, an.tau_hat, grid_exp);
  const GMinimum min = minimize_g(spec, an, out.params);
  out.analysis.theta_lower = b.theta_lower;
  out.analysis.mu_lower = b.mu_lower;
  out.analysis.t_star = min.t_star;
  out.analysis.h = min.h;
  out.analysis.delta_bar = delta_bar(an, min.t_star);
  return out;
}

GShapeReport verify_g_shape(const PenaltySpec& spec, const PenaltyAnalysis& an,
                            const GParams& gp, int n_samples) {
  const GMinimum min = minimize_g(spec, an, gp);
  const double dbar = delta_bar(an, min.t_star);
  const double th = gp.tau_hat.value();
  const int n = std::max(n_samples, 2);
  const auto g = [&](double t) { return g_eval(spec, gp, t); };

  GShapeReport rep;
  rep.n_samples = n;
  rep.min_curvature = std::numeric_limits<double>::infinity();
  rep.max_left_slope = -std::numeric_limits<double>::infinity();
  rep.min_right_slope = std::numeric_limits<double>::infinity();
  rep.min_escape_margin = std::numeric_limits<double>::infinity();

  if (gp.q > 1.0) {
    const double h = 1e-3 * (an.tau - an.tau0);
    for (int k = 0; k < n; ++k) {
      const double t = an.tau0 + h + (an.tau - an.tau0 - 2.0 * h) * k / (n - 1);
      if (gp.q < 2.0 && std::abs(t - th) < 1e-9) continue;
      const double curv = (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h);
      if (curv < rep.min_curvature) {
        rep.min_curvature = curv;
        rep.curvature_witness = t;
      }
    }
    rep.curvature_ok = rep.min_curvature >= 1.0 - 1e-6;
  } else {
    for (int k = 0; k < n; ++k) {
      const double t = an.tau0 + (an.tau - an.tau0) * k / (n - 1);
      if (t == th) continue;
      // g'(t) = p'(t) + mu sign(t - tau_hat) for t > 0 and theta = 0.
      if (t < th) {
        rep.max_left_slope = std::max(rep.max_left_slope, p_d1(spec, t) - gp.mu);
      } else {
        rep.min_right_slope = std::min(rep.min_right_slope, p_d1(spec, t) + gp.mu);
      }
    }
    rep.slope_ok = rep.max_left_slope < -1.0 && rep.min_right_slope > 1.0;
  }

  const double floor = min.h + dbar * dbar;
  const auto probe = [&](double lo, double hi) {
    for (int k = 0; k < n; ++k) {
      const double t = lo + (hi - lo) * k / (n - 1);
      const double margin = g(t) - floor;
      if (margin < rep.min_escape_margin) {
        rep.min_escape_margin = margin;
        rep.escape_witness = t;
      }
    }
  };
  probe(-2.0 * an.tau, an.tau0);
  probe(an.tau, 3.0 * an.tau);
  rep.escape_ok = rep.min_escape_margin >= 0.0;
  rep.overall = rep.curvature_ok && rep.slope_ok && rep.escape_ok;
  return rep;
}

}  // namespace penlq
