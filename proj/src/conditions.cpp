#include "penlq/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "penlq/error.hpp"
#include "penlq/parallel.hpp"

namespace penlq {

namespace {

double slack(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

CheckResult check_monotone(const PenaltySpec& spec, double tau, int n) {
  CheckResult r;
  r.measure = 0.0;
  double prev = p_eval(spec, 0.0);
  double prev_t = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double t = 2.0 * tau * k / n;
    const double v = p_eval(spec, t);
    const double drop = prev - v;
    r.measure = std::max(r.measure, drop);
    if (drop > slack(prev) && r.pass) {
      r.pass = false;
      r.witness = {prev_t, t, prev, v};
      std::ostringstream os;
      os << "p decreases from p(" << prev_t << ") = " << prev << " to p(" << t << ") = " << v;
      r.detail = os.str();
    }
    prev = v;
    prev_t = t;
  }
  return r;
}

CheckResult check_concave(const PenaltySpec& spec, double tau, int n) {
  CheckResult r;
  std::vector<double> v(n + 1);
  for (int k = 0; k <= n; ++k) v[k] = p_eval(spec, tau * k / n);
  for (int k = 1; k < n; ++k) {
    const double chord = 0.5 * (v[k - 1] + v[k + 1]);
    const double excess = chord - v[k];
    r.measure = std::max(r.measure, excess);
    if (excess > slack(chord) && r.pass) {
      r.pass = false;
      r.witness = {tau * (k - 1) / n, tau * k / n, tau * (k + 1) / n};
      std::ostringstream os;
      os << "midpoint below chord at t = " << r.witness[1] << " by " << excess;
      r.detail = os.str();
    }
  }
  return r;
}

CheckResult check_not_linear(const PenaltySpec& spec, double tau0) {
  CheckResult r;
  r.measure = localization_constant(spec, tau0);
  r.pass = r.measure > 1e-12;
  if (!r.pass) {
    r.witness = {tau0 / 3.0, 2.0 * tau0 / 3.0, tau0};
    std::ostringstream os;
    os << "C1 = " << r.measure << " <= 1e-12: p is linear on [0, tau0]";
    r.detail = os.str();
  }
  return r;
}

CheckResult check_smooth(const PenaltySpec& spec, double tau0, double tau, int n) {
  CheckResult r;
  for (double kink : spec.kinks()) {
    if (kink >= tau0 && kink <= tau) {
      r.pass = false;
      r.witness = {kink};
      r.measure = std::numeric_limits<double>::infinity();
      std::ostringstream os;
      os << "kink at t = " << kink << " inside [tau0, tau]";
      r.detail = os.str();
      return r;
    }
  }
  const double h = 1e-4 * (tau - tau0);
  const auto fd2 = [&](double t) {
    return (p_eval(spec, t + h) - 2.0 * p_eval(spec, t) + p_eval(spec, t - h)) / (h * h);
  };
  // Grid points are kept 2h inside the interval so every stencil stays in it.
  const double lo = tau0 + 2.0 * h;
  const double hi = tau - 2.0 * h;
  double K = 0.0;
  std::vector<double> jumps(n + 1);
  std::vector<double> points(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = lo + (hi - lo) * k / n;
    const double left = fd2(t - h);
    const double right = fd2(t + h);
    K = std::max({K, -left, -right});
    points[k] = t;
    jumps[k] = std::abs(right - left);
  }
  const double limit = 1e-3 * (1.0 + K);
  const auto worst = std::max_element(jumps.begin(), jumps.end());
  r.measure = *worst;
  if (*worst >= limit) {
    r.pass = false;
    r.witness = {points[worst - jumps.begin()], *worst};
    std::ostringstream os;
    os << "second derivative jumps by " << *worst << " near t = " << r.witness[0]
       << " (limit " << limit << ")";
    r.detail = os.str();
  }
  return r;
}

}  // namespace

ConditionReport check_theorem1(const PenaltySpec& spec, int grid_n) {
  if (grid_n < 100) throw DomainError("check_theorem1: grid_n must be >= 100");
  const Radii radii = default_radii(spec);
  ConditionReport rep;
  rep.grid_n = grid_n;
  rep.tau = radii.tau;
  rep.tau0 = radii.tau0;
  rep.monotone = check_monotone(spec, radii.tau, grid_n);
  rep.concave_on_0_tau = check_concave(spec, radii.tau, grid_n);
  rep.not_linear = check_not_linear(spec, radii.tau0);
  rep.smooth_near_tau = check_smooth(spec, radii.tau0, radii.tau, grid_n);
  rep.overall = rep.monotone.pass && rep.concave_on_0_tau.pass && rep.not_linear.pass &&
                rep.smooth_near_tau.pass;
  return rep;
}

bool verify_lemma1(const PenaltySpec& spec, std::span<const double> t) {
  if (t.size() < 2) throw DomainError("verify_lemma1: need at least two values");
  const double tau = default_radii(spec).tau;
  double lhs = 0.0;
  double sum = 0.0;
  for (double v : t) {
    lhs += p_eval(spec, std::abs(v));
    sum += v;
  }
  const double rhs = std::min(p_eval(spec, std::abs(sum)), p_eval(spec, tau));
  return lhs >= rhs - slack(rhs);
}

std::string_view to_string(Lemma2Verdict v) {
  switch (v) {
    case Lemma2Verdict::HypothesisFails:
      return "hypothesis_fails";
    case Lemma2Verdict::ConcentratedOK:
      return "concentrated";
    case Lemma2Verdict::CounterexampleFound:
      return "counterexample";
  }
  return "unknown";
}

Lemma2Verdict verify_lemma2(const PenaltySpec& spec, const PenaltyAnalysis& an, double t_tilde,
                            double delta, std::span<const double> t) {
  if (!(t_tilde > an.tau0 && t_tilde < an.tau)) {
    throw DomainError("verify_lemma2: t_tilde must lie in (tau0, tau)");
  }
  const double delta_max = std::min({an.tau0 / 3.0, t_tilde - an.tau0, an.tau - t_tilde});
  if (!(delta > 0.0 && delta < delta_max)) {
    std::ostringstream os;
    os << "verify_lemma2: delta = " << delta << " outside (0, " << delta_max << ")";
    throw DomainError(os.str());
  }
  if (t.size() < 2) throw DomainError("verify_lemma2: need at least two values");
  const double sum = std::accumulate(t.begin(), t.end(), 0.0);
  if (std::abs(sum - t_tilde) > 1e-12) {
    throw DomainError("verify_lemma2: values must sum to t_tilde");
  }

  double lhs = 0.0;
  for (double v : t) lhs += p_eval(spec, std::abs(v));
  const double threshold = p_eval(spec, t_tilde) + an.C1 * delta;
  // Inputs within rounding of the threshold are treated as not satisfying the
  // strict hypothesis.
  if (lhs >= threshold - slack(threshold)) return Lemma2Verdict::HypothesisFails;

  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - t_tilde) > delta) continue;
    bool rest_small = true;
    for (std::size_t j = 0; j < t.size() && rest_small; ++j) {
      if (j != i && std::abs(t[j]) > delta) rest_small = false;
    }
    if (rest_small) return Lemma2Verdict::ConcentratedOK;
  }
  return Lemma2Verdict::CounterexampleFound;
}

Lemma1FuzzReport fuzz_lemma1(const PenaltySpec& spec, std::uint64_t trials, std::uint64_t seed) {
  const double tau = default_radii(spec).tau;
  const unsigned threads = thread_count();
  struct Partial {
    std::uint64_t violations = 0;
    std::uint64_t first = UINT64_MAX;
    std::vector<double> witness;
  };
  std::vector<Partial> parts(threads);
  parallel_chunks(trials, threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    Partial& part = parts[c];
    std::vector<double> t;
    for (std::uint64_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(mix_seed(seed, i));
      const int l = std::uniform_int_distribution<int>(2, 6)(rng);
      std::uniform_real_distribution<double> u(-2.0 * tau, 2.0 * tau);
      t.resize(l);
      for (double& v : t) v = u(rng);
      if (!verify_lemma1(spec, t)) {
        ++part.violations;
        if (i < part.first) {
          part.first = i;
          part.witness = t;
        }
      }
    }
  });
  Lemma1FuzzReport rep;
  rep.trials = trials;
  rep.seed = seed;
  std::uint64_t first = UINT64_MAX;
  for (const auto& p : parts) {
    rep.violations += p.violations;
    if (p.first < first) {
      first = p.first;
      rep.first_violation = p.witness;
    }
  }
  return rep;
}

namespace {

// One random localization input: admissible (t_tilde, delta) and a decomposition of
// t_tilde into l values.
void draw_lemma2_case(const PenaltyAnalysis& an, std::mt19937_64& rng, double& t_tilde,
                      double& delta, std::vector<double>& t) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double delta_cap = std::min(an.tau0 / 3.0, 0.5 * (an.tau - an.tau0));
  delta = delta_cap * std::max(unit(rng), 1e-6) * (1.0 - 1e-9);
  t_tilde = an.tau0 + delta + (an.tau - an.tau0 - 2.0 * delta) * (0.001 + 0.998 * unit(rng));

  const int l = std::uniform_int_distribution<int>(2, 6)(rng);
  t.assign(l, 0.0);
  const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
  if (mode == 0) {
    // Near-concentrated: one large entry, the others within about 2 delta,
    // each exactly zero with probability 1/2.
    const int big = std::uniform_int_distribution<int>(0, l - 1)(rng);
    const double scale = 2.0 * unit(rng);
    std::uniform_real_distribution<double> small(-scale * delta, scale * delta);
    for (int j = 0; j < l; ++j) {
      if (j != big && unit(rng) < 0.5) t[j] = small(rng);
    }
    double rest = 0.0;
    for (int j = 0; j < l; ++j) {
      if (j != big) rest += t[j];
    }
    t[big] = t_tilde - rest;
    return;
  }
  // Dirichlet split with a log-uniform concentration, then zero-sum noise.
  const double alpha = std::exp(std::log(0.01) + (std::log(2.0) - std::log(0.01)) * unit(rng));
  std::gamma_distribution<double> gam(alpha, 1.0);
  double total = 0.0;
  for (double& v : t) {
    v = gam(rng) + 1e-300;
    total += v;
  }
  for (double& v : t) v *= t_tilde / total;
  const double sigma = std::exp(std::log(1e-6) + (std::log(an.tau) - std::log(1e-6)) * unit(rng));
  std::normal_distribution<double> noise(0.0, sigma);
  double mean = 0.0;
  std::vector<double> eta(l);
  for (double& e : eta) {
    e = noise(rng);
    mean += e / l;
  }
  for (int j = 0; j < l; ++j) t[j] += eta[j] - mean;
  double rest = 0.0;
  for (int j = 0; j + 1 < l; ++j) rest += t[j];
  t[l - 1] = t_tilde - rest;
}

}  // namespace

Lemma2FuzzReport fuzz_lemma2(const PenaltySpec& spec, std::uint64_t trials, std::uint64_t seed) {
  const PenaltyAnalysis an = analyze(spec);
  const unsigned threads = thread_count();
  struct Partial {
    std::uint64_t fails = 0, concentrated = 0, counter = 0;
    std::uint64_t first = UINT64_MAX;
    std::vector<double> witness;
  };
  std::vector<Partial> parts(threads);
  parallel_chunks(trials, threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    Partial& part = parts[c];
    std::vector<double> t;
    double t_tilde = 0.0, delta = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(mix_seed(seed, i));
      draw_lemma2_case(an, rng, t_tilde, delta, t);
      switch (verify_lemma2(spec, an, t_tilde, delta, t)) {
        case Lemma2Verdict::HypothesisFails:
          ++part.fails;
          break;
        case Lemma2Verdict::ConcentratedOK:
          ++part.concentrated;
          break;
        case Lemma2Verdict::CounterexampleFound:
          ++part.counter;
          if (i < part.first) {
            part.first = i;
            part.witness = {t_tilde, delta};
            part.witness.insert(part.witness.end(), t.begin(), t.end());
          }
          break;
      }
    }
  });
  Lemma2FuzzReport rep;
  rep.trials = trials;
  rep.seed = seed;
  std::uint64_t first = UINT64_MAX;
  for (const auto& p : parts) {
    rep.hypothesis_fails += p.fails;
    rep.concentrated += p.concentrated;
    rep.counterexamples += p.counter;
    if (p.first < first) {
      first = p.first;
      rep.first_counterexample = p.witness;
    }
  }
  return rep;
}

}  // namespace penlq
