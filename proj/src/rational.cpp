// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/rational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "regvar/errors.hpp"

namespace regvar {

std::string Rational::to_string() const {
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

namespace {

Rational simplest_rec(double lo, double hi, int depth) {
  if (depth > 64)
    throw DomainError("simplest_rational_in: interval too narrow to resolve");
  const double c = std::ceil(lo);
  if (c <= hi) return Rational{static_cast<std::int64_t>(c), 1};
  const double n = std::floor(lo);
  // lo, hi share the integer part n; recurse on the reciprocal tail.
  const Rational inner = simplest_rec(1.0 / (hi - n), 1.0 / (lo - n), depth + 1);
  return Rational{static_cast<std::int64_t>(n) * inner.num + inner.den, inner.num};
}

}  // namespace

Rational simplest_rational_in(double lo, double hi) {
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi))
    throw DomainError("simplest_rational_in: need 0 < lo <= hi, both finite");
  return simplest_rec(lo, hi, 0);
}

Rational rationalize(double x, double tol) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("rationalize: x must be positive and finite");
  if (!(tol > 0.0)) throw DomainError("rationalize: tol must be > 0");
  const double lo = x - tol;
  const double hi = x + tol;
  if (lo <= 0.0) {
    // Interval touches zero: any 1/k with k large is inside, but the
    // smallest denominator comes from the integer walk on (0, hi].
    return simplest_rational_in(std::numeric_limits<double>::min(), hi);
  }
  return simplest_rational_in(lo, hi);
}

}  // namespace regvar
