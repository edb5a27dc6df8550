#include "penlq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "penlq/error.hpp"
#include "penlq/parallel.hpp"

namespace penlq {

namespace {

double abs_pow(double v, double q) {
  const double a = std::abs(v);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

std::uint64_t assignment_count(std::size_t n, std::size_t m) {
  // Saturating product m^n.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count = (count > kMax / m) ? kMax : count * m;
  if (count > kMaxAssignments) {
    std::ostringstream os;
    os << "minimize_structured: " << m << "^" << n << " = ";
    if (count == kMax) {
      os << "more than 2^64";
    } else {
      os << count;
    }
    os << " assignments exceed the limit of " << kMaxAssignments;
    throw SizeError(count, os.str());
  }
  return count;
}

}  // namespace

SolveResult minimize_structured(const ReductionInstance& red) {
  const std::size_t n = red.n();
  const std::size_t m = red.m();
  const std::uint64_t count = assignment_count(n, m);
  const double t_star = red.ganalysis.t_star;
  const double q = red.problem.q;

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::uint64_t index = 0;
    std::uint64_t equitable = 0;
  };
  const unsigned threads = thread_count();
  std::vector<Best> partial(threads);

  parallel_chunks(count, threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    // Mixed-radix odometer: digit i is the subset of item i.
    std::vector<std::size_t> digit(n);
    std::vector<std::int64_t> sums(m, 0);
    std::uint64_t rest = begin;
    for (std::size_t i = 0; i < n; ++i) {
      digit[i] = rest % m;
      rest /= m;
      sums[digit[i]] += red.tp.b[i];
    }
    Best best;
    for (std::uint64_t idx = begin;;) {
      // Only the subset-balance rows depend on the assignment; every item row
      // contributes lambda g(t*) regardless.
      double residual = 0.0;
      bool equal = true;
      for (std::size_t j = 1; j < m; ++j) {
        const std::int64_t diff = sums[j] - sums[0];
        if (diff != 0) equal = false;
        residual += abs_pow(t_star * static_cast<double>(diff), q);
      }
      if (equal) ++best.equitable;
      if (residual < best.value) {
        best.value = residual;
        best.index = idx;
      }
      if (++idx >= end) break;
      for (std::size_t i = 0; i < n; ++i) {
        sums[digit[i]] -= red.tp.b[i];
        if (++digit[i] == m) {
          digit[i] = 0;
          sums[0] += red.tp.b[i];
          continue;
        }
        sums[digit[i]] += red.tp.b[i];
        break;
      }
    }
    partial[c] = best;
  });

  Best best;
  for (const Best& b : partial) {
    best.equitable += b.equitable;
    if (b.value < best.value || (b.value == best.value && b.index < best.index)) {
      best.value = b.value;
      best.index = b.index;
    }
  }

  SolveResult out;
  out.assignment.resize(n);
  std::uint64_t rest = best.index;
  for (std::size_t i = 0; i < n; ++i) {
    out.assignment[i] = rest % m;
    rest /= m;
  }
  out.x = encode_certificate(red, partition_from_assignment(red.tp, out.assignment));
  out.value = objective(red, out.x);
  out.gap = out.value - optimal_bound(red);
  out.assignments_explored = count;
  out.equitable_assignments = best.equitable;
  return out;
}

namespace {

// Sparse column view of A for the coordinate updates.
struct ColumnEntries {
  std::vector<std::vector<std::pair<std::size_t, double>>> cols;

  explicit ColumnEntries(const DenseMatrix& A) : cols(A.cols()) {
    for (std::size_t r = 0; r < A.rows(); ++r) {
      for (std::size_t c = 0; c < A.cols(); ++c) {
        if (A(r, c) != 0.0) cols[c].emplace_back(r, A(r, c));
      }
    }
  }
};

}  // namespace

std::vector<double> local_descent(const ProblemInstance& pb, std::span<const double> x0,
                                  const DescentConfig& cfg) {
  const std::size_t dim = pb.A.cols();
  if (x0.size() != dim) throw DimensionMismatch("local_descent: x0 has the wrong length");
  std::vector<double> x(x0.begin(), x0.end());
  const ColumnEntries columns(pb.A);

  std::vector<double> resid(pb.A.rows());
  const auto refresh_residual = [&] {
    for (std::size_t r = 0; r < pb.A.rows(); ++r) {
      const auto row = pb.A.row(r);
      double s = -pb.target[r];
      for (std::size_t c = 0; c < dim; ++c) s += row[c] * x[c];
      resid[r] = s;
    }
  };
  refresh_residual();

  // Objective change from moving coordinate k by d.
  const auto change = [&](std::size_t k, double d) {
    double v = 0.0;
    for (const auto& [r, a] : columns.cols[k]) {
      v += abs_pow(resid[r] + a * d, pb.q) - abs_pow(resid[r], pb.q);
    }
    v += pb.lambda * (p_eval(pb.penalty, std::abs(x[k] + d)) - p_eval(pb.penalty, std::abs(x[k])));
    return v;
  };

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double current = objective(pb, x);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const std::vector<double> before = x;
    for (std::size_t k = 0; k < dim; ++k) {
      double a = -cfg.step, b = cfg.step;
      double c = b - ratio * (b - a), d = a + ratio * (b - a);
      double fc = change(k, c), fd = change(k, d);
      while (b - a > 1e-12) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - ratio * (b - a);
          fc = change(k, c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + ratio * (b - a);
          fd = change(k, d);
        }
      }
      double best_d = 0.0;
      double best_v = 0.0;
      const auto consider = [&](double cand) {
        const double v = change(k, cand);
        if (v < best_v) {
          best_v = v;
          best_d = cand;
        }
      };
      consider(0.5 * (a + b));
      if (std::abs(x[k]) <= cfg.step) consider(-x[k]);
      if (best_d != 0.0) {
        for (const auto& [r, coef] : columns.cols[k]) resid[r] += coef * best_d;
        x[k] = (best_d == -x[k]) ? 0.0 : x[k] + best_d;
      }
    }
    refresh_residual();
    const double next = objective(pb, x);
    if (!(next <= current)) {
      // Accumulated rounding in the incremental updates; keep the last
      // accepted point.
      x = before;
      break;
    }
    const double decrease = current - next;
    current = next;
    if (decrease < cfg.tol) break;
  }
  return x;
}

SolveResult solve(const ReductionInstance& red, const SolveBudget& budget) {
  if (budget.restarts < 0) throw DomainError("solve: restarts must be >= 0");
  SolveResult best = minimize_structured(red);
  best.seed = budget.seed;
  if (budget.mode == SolveMode::Structured || budget.restarts == 0) return best;

  DescentConfig cfg;
  cfg.step = 2.0 * red.delta;
  cfg.max_iters = 500;
  const SolutionMatrix start = best.x;
  for (int r = 0; r < budget.restarts; ++r) {
    std::vector<double> x0 = start.entries;
    if (r > 0) {
      std::mt19937_64 rng(mix_seed(budget.seed, static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> noise(-red.delta, red.delta);
      for (double& v : x0) v += noise(rng);
    }
    SolutionMatrix cand(red.n(), red.m());
    cand.entries = local_descent(red.problem, x0, cfg);
    const double value = objective(red, cand);
    if (value < best.value) {
      best.x = std::move(cand);
      best.value = value;
    }
  }
  best.gap = best.value - optimal_bound(red);
  return best;
}

}  // namespace penlq
