#include "penlq/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "penlq/conditions.hpp"
#include "penlq/error.hpp"

namespace penlq {

namespace {

double abs_pow(double v, double q) {
  const double a = std::abs(v);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

}  // namespace

double objective(const ProblemInstance& pb, std::span<const double> x) {
  if (x.size() != pb.A.cols() || pb.target.size() != pb.A.rows()) {
    std::ostringstream os;
    os << "objective: A is " << pb.A.rows() << "x" << pb.A.cols() << ", target has "
       << pb.target.size() << " entries, x has " << x.size();
    throw DimensionMismatch(os.str());
  }
  double fit = 0.0;
  for (std::size_t r = 0; r < pb.A.rows(); ++r) {
    const auto row = pb.A.row(r);
    double s = -pb.target[r];
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * x[c];
    fit += abs_pow(s, pb.q);
  }
  double pen = 0.0;
  for (double v : x) pen += p_eval(pb.penalty, std::abs(v));
  return fit + pb.lambda * pen;
}

ReductionInstance build(const ThreePartitionInstance& tp, const PenaltySpec& spec, double q,
                        double lambda, int grid_exp) {
  if (!(q >= 1.0)) throw DomainError("build: q must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("build: lambda must be > 0");
  const ConditionReport rep = check_theorem1(spec, 1000);
  if (!rep.overall) {
    std::string why;
    for (const CheckResult* c : {&rep.monotone, &rep.concave_on_0_tau, &rep.not_linear,
                                 &rep.smooth_near_tau}) {
      if (!c->pass) why += (why.empty() ? "" : "; ") + c->detail;
    }
    throw ConditionViolation("build: penalty rejected: " + why);
  }
  const PenaltyAnalysis an = analyze(spec);
  const GSetup g = prepare_g(spec, an, q, lambda, grid_exp);
  if (q == 1.0 && g.params.theta != 0.0) {
    throw PreconditionError("build: q = 1 requires theta = 0");
  }

  const std::size_t n = tp.n();
  const std::size_t m = static_cast<std::size_t>(tp.m);
  const bool theta_rows = g.params.root_theta.num != 0;
  const std::size_t rows = (m - 1) + (theta_rows ? n : 0) + n;
  DenseMatrix A(rows, n * m);
  std::vector<double> target(rows, 0.0);

  std::size_t r = 0;
  for (std::size_t j = 1; j < m; ++j, ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      A(r, i * m + j) = static_cast<double>(tp.b[i]);
      A(r, i * m) = -static_cast<double>(tp.b[i]);
    }
  }
  if (theta_rows) {
    const double c = g.params.root_theta.value();
    for (std::size_t i = 0; i < n; ++i, ++r) {
      for (std::size_t j = 0; j < m; ++j) A(r, i * m + j) = c;
    }
  }
  const double c = g.params.root_mu.value();
  for (std::size_t i = 0; i < n; ++i, ++r) {
    for (std::size_t j = 0; j < m; ++j) A(r, i * m + j) = c;
    target[r] = c * an.tau_hat_value();
  }

  const double total = static_cast<double>(tp.total());
  const double delta = std::min(an.tau0 / (8.0 * total), g.analysis.delta_bar);
  const double epsilon = std::min(lambda * delta * delta, abs_pow(an.tau0 / 2.0, q));

  return ReductionInstance{
      ProblemInstance{std::move(A), std::move(target), lambda, q, spec},
      tp, an, g.params, g.analysis, delta, epsilon};
}

double objective(const ReductionInstance& red, const SolutionMatrix& x) {
  if (x.n != red.n() || x.m != red.m()) {
    std::ostringstream os;
    os << "objective: solution is " << x.n << "x" << x.m << ", instance needs " << red.n() << "x"
       << red.m();
    throw DimensionMismatch(os.str());
  }
  return objective(red.problem, x.entries);
}

double optimal_bound(const ReductionInstance& red) {
  return static_cast<double>(red.n()) * red.problem.lambda * red.ganalysis.h;
}

SolutionMatrix encode_certificate(const ReductionInstance& red, const Partition& partition) {
  // Re-validate against this instance.
  const Partition checked = make_partition(red.tp, partition.subsets);
  SolutionMatrix x(red.n(), red.m());
  for (std::size_t j = 0; j < checked.subsets.size(); ++j) {
    for (std::size_t i : checked.subsets[j]) x.at(i, j) = red.ganalysis.t_star;
  }
  return x;
}

}  // namespace penlq
