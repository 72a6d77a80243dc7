// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/popa.hpp"

#include <cmath>
#include <sstream>

#include "regvar/errors.hpp"

namespace regvar::popa {

namespace {

std::string describe(const PopaParam& p, double x) {
  std::ostringstream os;
  os << "x = " << x << " outside the group domain (" << p.boundary()
     << ", inf) for rho = " << p.to_string();
  return os.str();
}

void require_member(const PopaParam& p, double x) {
  if (!std::isfinite(x) || !p.in_domain(x)) throw DomainError(describe(p, x));
}

}  // namespace

PopaParam PopaParam::finite(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw DomainError("PopaParam: rho must be finite and >= 0");
  return PopaParam(rho, false);
}

double PopaParam::rho() const {
  if (infinite_) throw DomainError("PopaParam: rho() called on the infinite state");
  return rho_;
}

double PopaParam::boundary() const {
  if (infinite_) return 0.0;
  if (rho_ == 0.0) return -std::numeric_limits<double>::infinity();
  return -1.0 / rho_;
}

std::string PopaParam::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << rho_;
  return os.str();
}

double eta(const PopaParam& param, double t) {
  if (param.is_infinite()) {
    if (!(t > 0.0)) throw DomainError("eta: rho = inf requires t > 0");
    return t;
  }
  if (!std::isfinite(t)) throw DomainError("eta: t must be finite");
  return 1.0 + param.rho() * t;
}

double circle(const PopaParam& param, double s, double t) {
  require_member(param, s);
  require_member(param, t);
  if (param.is_infinite()) return s * t;
  return s + t * (1.0 + param.rho() * s);
}

double inverse(const PopaParam& param, double x) {
  if (param.is_infinite()) {
    require_member(param, x);
    return 1.0 / x;
  }
  const double e = eta(param, x);
  if (e == 0.0)
    throw SingularityError("inverse: eta vanishes at x = rho*, no group inverse");
  require_member(param, x);
  return -x / e;
}

double gs_residual(const PopaParam& param, double s, double t) {
  const double composed = circle(param, s, t);
  return std::fabs(eta(param, composed) - eta(param, s) * eta(param, t));
}

GroupElement::GroupElement(double value, const PopaParam& param)
    : value_(value), param_(param) {
  require_member(param_, value_);
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  if (!(param_ == other.param_))
    throw DomainError("GroupElement: cannot compose across different groups");
  return GroupElement(circle(param_, value_, other.value_), param_);
}

GroupElement GroupElement::inverted() const {
  return GroupElement(inverse(param_, value_), param_);
}

}  // namespace regvar::popa
