#include "penlq/rational.hpp"

#include <cmath>
#include <numeric>

#include "penlq/error.hpp"

namespace penlq {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

// Stern-Brocot descent on continued fractions. The recursion depth is bounded
// by the number of partial quotients of the interval ends, which is small for
// the interval widths used here (>= 2^-21).
Rational simplest_impl(long double lo, long double hi, int depth) {
  if (depth > 60) throw DomainError("simplest_rational_between: no convergence");
  const long double a = std::floor(lo);
  if (a == lo) return {static_cast<std::int64_t>(a), 1};
  if (a + 1 <= hi) return {static_cast<std::int64_t>(a) + 1, 1};
  // lo and hi share the integer part a: recurse on the reciprocals of the
  // fractional parts (order flips).
  const Rational r = simplest_impl(1.0L / (hi - a), 1.0L / (lo - a), depth + 1);
  // a + 1 / (r.num / r.den) = (a * r.num + r.den) / r.num
  return {static_cast<std::int64_t>(a) * r.num + r.den, r.num};
}

}  // namespace

Rational simplest_rational_between(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw DomainError("simplest_rational_between: need 0 <= lo <= hi");
  }
  Rational r = simplest_impl(lo, hi, 0);
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -exp); }

std::string Dyadic::str() const {
  if (exp == 0) return std::to_string(num);
  return std::to_string(num) + "/2^" + std::to_string(exp);
}

}  // namespace penlq
