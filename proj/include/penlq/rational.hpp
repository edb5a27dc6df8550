#pragma once

#include <cstdint>
#include <string>

namespace penlq {

/// Exact rational number num/den with den > 0, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Rational of smallest denominator in the closed interval [lo, hi], 0 <= lo <= hi.
/// Throws DomainError on a negative or inverted interval.
Rational simplest_rational_between(double lo, double hi);

/// Dyadic rational num / 2^exp. Every value with |num| < 2^53 is exact in a double.
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  double value() const;
  std::string str() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

}  // namespace penlq
