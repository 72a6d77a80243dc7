// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_RATIONAL_HPP
#define REGVAR_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace regvar {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

/// The rational with the smallest denominator in the closed interval
/// [lo, hi] (0 < lo <= hi), via the continued-fraction / Stern-Brocot
/// interval walk. Among the candidates with that denominator the one
/// returned is the unique one the walk produces (there is at most one
/// fraction with minimal denominator in an interval of length < 1/den).
Rational simplest_rational_in(double lo, double hi);

/// Rational approximation of x with |q - x| <= tol and minimal denominator
/// among all rationals within tol of x. Requires x > 0 and tol > 0.
Rational rationalize(double x, double tol);

}  // namespace regvar

#endif  // REGVAR_RATIONAL_HPP
