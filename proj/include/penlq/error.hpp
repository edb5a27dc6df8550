#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace penlq {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A penalty parameter is outside its admissible range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A derivative was requested at a point where the penalty is not
// differentiable.
class NondifferentiablePoint : public Error {
 public:
  NondifferentiablePoint(double kink, const std::string& what)
      : Error(what), kink_(kink) {}
  double kink() const { return kink_; }

 private:
  double kink_;
};

// The penalty does not satisfy the hardness conditions (monotone, concave but
// not linear near zero, smooth near tau).
class ConditionViolation : public Error {
 public:
  using Error::Error;
};

// Inputs whose shapes do not agree (matrix/vector dimensions, partition size).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An operation was called with parameters for which its guarantees do not
// hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A 3-partition instance or a partition of its items is malformed.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the search space is too large.
class SizeError : public Error {
 public:
  SizeError(std::uint64_t count, const std::string& what)
      : Error(what), count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

// A solution could not be rounded to the {0, t*} pattern.
class RoundingFailure : public Error {
 public:
  RoundingFailure(std::size_t row, const std::string& what)
      : Error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// A near-optimal solution failed to decode into an equitable partition. This
// can only happen if the implementation is wrong.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace penlq
