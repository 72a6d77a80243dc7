// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "regvar/errors.hpp"
#include "regvar/rational.hpp"
#include "regvar/rng.hpp"

using namespace regvar;

namespace {

// Brute-force minimality oracle: no fraction with a smaller denominator lies
// within [x - tol, x + tol].
bool denominator_is_minimal(const Rational& q, double x, double tol) {
  for (std::int64_t d = 1; d < q.den; ++d) {
    const auto p = static_cast<std::int64_t>(std::llround(x * static_cast<double>(d)));
    for (std::int64_t pp = p - 1; pp <= p + 1; ++pp) {
      if (pp <= 0) continue;
      const double v = static_cast<double>(pp) / static_cast<double>(d);
      if (std::fabs(v - x) <= tol) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("simplest_rational_in: hand cases") {
  CHECK(simplest_rational_in(2.3, 3.2).num == 3);
  CHECK(simplest_rational_in(2.3, 3.2).den == 1);
  auto half = simplest_rational_in(0.4, 0.6);
  CHECK(half.num == 1);
  CHECK(half.den == 2);
  auto third = simplest_rational_in(0.32, 0.34);
  CHECK(third.num == 1);
  CHECK(third.den == 3);
  CHECK_THROWS_AS(simplest_rational_in(-1.0, 2.0), DomainError);
}

TEST_CASE("rationalize pi at loose tolerance picks the semiconvergent 13/4") {
  // The first continued-fraction convergent within 0.12 of pi is 22/7, but
  // 13/4 is closer than 0.12 with a smaller denominator; the interval walk
  // must find it.
  const double x = 3.14159265358979312;
  const auto q = rationalize(x, 0.12);
  CHECK(q.num == 13);
  CHECK(q.den == 4);
  CHECK(denominator_is_minimal(q, x, 0.12));
}

TEST_CASE("rationalize: random minimality property") {
  Rng rng(0xabcdefULL);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(0.01, 50.0);
    const double tol = std::pow(10.0, rng.uniform(-6.0, -1.0));
    const auto q = rationalize(x, tol);
    CHECK(std::fabs(q.value() - x) <= tol * (1.0 + 1e-12));
    CHECK(denominator_is_minimal(q, x, tol));
  }
}

TEST_CASE("rationalize near zero returns 1/k") {
  const auto q = rationalize(0.05, 0.06);  // interval reaches below 0 -> (0, 0.11]
  CHECK(q.num == 1);
  CHECK(q.den == 10);
}
