#pragma once

#include "penlq/penalty.hpp"
#include "penlq/rational.hpp"

namespace penlq {

// The one-dimensional surrogate
//
//   g(t) = p(|t|) + theta |t|^q + mu |t - tau_hat|^q
//
// whose unique minimizer t* anchors the reduction. For q > 1 the lower bounds
// make g'' >= 1 on [tau0, tau]; for q = 1 (theta = 0) they make g' < -1 left
// of tau_hat and g' > 1 right of it.

struct GParams {
  double q = 1.0;
  double theta = 0.0;
  double mu = 0.0;
  Rational tau_hat;
  /// The lambda the roots below were computed for.
  double lambda = 1.0;
  /// (lambda theta)^(1/q) and (lambda mu)^(1/q), both dyadic rationals.
  Dyadic root_theta;
  Dyadic root_mu;
};

struct GBounds {
  double theta_lower = 0.0;
  /// mu_lower for q > 1 (the requirement is mu >= mu_lower * theta);
  /// the absolute lower bound on mu for q = 1.
  double mu_lower = 0.0;
};

struct GAnalysis {
  double theta_lower = 0.0;
  double mu_lower = 0.0;
  double t_star = 0.0;
  double h = 0.0;
  double delta_bar = 0.0;
};

struct GMinimum {
  double t_star = 0.0;
  double h = 0.0;
};

/// q > 1:
///   theta_lower = (1 + K) / (q (q-1) min{tau0^(q-2), tau^(q-2)})
///   mu_lower    = (p(tau_hat) + theta_lower tau_hat^q + 1) / (theta_lower |tau0 - tau_hat|^q)
/// q = 1: theta_lower = 0,
///   mu_lower = max{1 + p'(tau0), (p(tau_hat) + 1) / (tau_hat - tau0)}.
/// Throws DomainError for q < 1.
GBounds bounds(const PenaltySpec& spec, const PenaltyAnalysis& analysis, double q);

/// Picks theta and mu at or above the bounds so that (lambda theta)^(1/q) and
/// (lambda mu)^(1/q) are multiples of 2^-grid_exp: each root is the smallest
/// such multiple meeting its bound. For q = 2 the mu root is then rounded up
/// to an integer when that raises mu by at most 5%.
GParams rationalize(double theta_lower, double mu_lower, double lambda, double q,
                    Rational tau_hat, int grid_exp = 20);

double g_eval(const PenaltySpec& spec, const GParams& params, double t);

/// Unique global minimizer of g. q = 1 returns (tau_hat, p(tau_hat)) exactly;
/// q > 1 runs golden-section search on [tau0, tau] down to a bracket of width
/// `tol`. Throws PreconditionError if the parameters are below the bounds or
/// were built for a different tau_hat.
GMinimum minimize_g(const PenaltySpec& spec, const PenaltyAnalysis& analysis,
                    const GParams& params, double tol = 1e-12);

/// min{tau0/3, (t* - tau0)/2, (tau - t*)/2, 1, C1}. Throws DomainError unless
/// t* lies in (tau0, tau).
double delta_bar(const PenaltyAnalysis& analysis, double t_star);

/// bounds -> rationalize -> minimize_g -> delta_bar in one go.
struct GSetup {
  GParams params;
  GAnalysis analysis;
};
GSetup prepare_g(const PenaltySpec& spec, const PenaltyAnalysis& analysis, double q,
                 double lambda, int grid_exp = 20);

struct GShapeReport {
  int n_samples = 0;
  /// q > 1: min finite-difference g'' over [tau0, tau] (+inf for q = 1).
  double min_curvature = 0.0;
  double curvature_witness = 0.0;
  bool curvature_ok = true;
  /// q = 1: max g' on [tau0, tau_hat) and min g' on (tau_hat, tau].
  double max_left_slope = 0.0;
  double min_right_slope = 0.0;
  bool slope_ok = true;
  /// min of g(t) - h - delta_bar^2 over t in [-2 tau, tau0] and [tau, 3 tau].
  double min_escape_margin = 0.0;
  double escape_witness = 0.0;
  bool escape_ok = true;
  bool overall = false;
};

/// Samples the shape guarantees of g: curvature (q > 1) or slope (q = 1) on
/// [tau0, tau], and g >= h + delta_bar^2 outside (tau0, tau).
GShapeReport verify_g_shape(const PenaltySpec& spec, const PenaltyAnalysis& analysis,
                            const GParams& params, int n_samples);

}  // namespace penlq
