#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "penlq/g_analysis.hpp"
#include "penlq/partition.hpp"
#include "penlq/penalty.hpp"

namespace penlq {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// min_x ||A x - target||_q^q + lambda sum_j p(|x_j|).
struct ProblemInstance {
  DenseMatrix A;
  std::vector<double> target;
  double lambda = 1.0;
  double q = 1.0;
  PenaltySpec penalty;
};

/// Throws DimensionMismatch if x has the wrong length.
double objective(const ProblemInstance& problem, std::span<const double> x);

/// x_ij for item i and subset j, row-major by item: column index i m + j.
struct SolutionMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> entries;

  SolutionMatrix() = default;
  SolutionMatrix(std::size_t n_, std::size_t m_) : n(n_), m(m_), entries(n_ * m_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return entries[i * m + j]; }
  double at(std::size_t i, std::size_t j) const { return entries[i * m + j]; }
};

/// A materialized reduction from a 3-partition instance. Rows of A:
///   m-1 rows   sum_i b_i x_ij - sum_i b_i x_i1            (target 0)
///   n rows     (lambda theta)^(1/q) sum_j x_ij             (target 0; omitted when theta = 0)
///   n rows     (lambda mu)^(1/q) sum_j x_ij                (target (lambda mu)^(1/q) tau_hat)
struct ReductionInstance {
  ProblemInstance problem;
  ThreePartitionInstance tp;
  PenaltyAnalysis analysis;
  GParams gparams;
  GAnalysis ganalysis;
  /// min{tau0 / (8 sum b_i), delta_bar}
  double delta = 0.0;
  /// min{lambda delta^2, (tau0 / 2)^q}
  double epsilon = 0.0;

  std::size_t n() const { return tp.n(); }
  std::size_t m() const { return static_cast<std::size_t>(tp.m); }
  std::size_t column(std::size_t i, std::size_t j) const { return i * m() + j; }
};

/// Rejects penalties that fail check_theorem1 (ConditionViolation).
ReductionInstance build(const ThreePartitionInstance& tp, const PenaltySpec& spec, double q,
                        double lambda, int grid_exp = 20);

double objective(const ReductionInstance& red, const SolutionMatrix& x);

/// n lambda h: a lower bound on the objective, attained exactly when an
/// equitable partition exists.
double optimal_bound(const ReductionInstance& red);

/// x_ij = t* when item i is in subset j, 0 otherwise.
SolutionMatrix encode_certificate(const ReductionInstance& red, const Partition& partition);

}  // namespace penlq
