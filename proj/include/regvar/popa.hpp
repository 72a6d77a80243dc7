// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic of the Popa circle operation s o t = s + t*eta(s) for the
// one-parameter family eta_rho(t) = 1 + rho*t, together with the groups it
// induces on the positive branch {x : eta_rho(x) > 0}.

#ifndef REGVAR_POPA_HPP
#define REGVAR_POPA_HPP

#include <limits>
#include <string>

namespace regvar::popa {

/// Parameter rho in [0, inf] of the family eta_rho(t) = 1 + rho*t.
///
/// rho = inf is a distinguished state (never a floating sentinel): its group
/// is (0, inf) under ordinary multiplication with identity 1. rho = 0 gives
/// the additive group on all of R with identity 0.
class PopaParam {
 public:
  static PopaParam finite(double rho);
  static PopaParam infinite() { return PopaParam(0.0, true); }

  bool is_infinite() const { return infinite_; }

  /// Finite parameter value; must not be called on the infinite state.
  double rho() const;

  /// Left end of the group domain: -1/rho for finite rho > 0, -inf for
  /// rho = 0, 0 for rho = inf. The domain is the open ray (boundary(), inf).
  double boundary() const;

  /// Group identity: 0 for finite rho, 1 for rho = inf.
  double identity() const { return infinite_ ? 1.0 : 0.0; }

  bool in_domain(double x) const { return x > boundary(); }

  std::string to_string() const;

  friend bool operator==(const PopaParam& a, const PopaParam& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.rho_ == b.rho_);
  }

 private:
  PopaParam(double rho, bool infinite) : rho_(rho), infinite_(infinite) {}
  double rho_;
  bool infinite_;
};

/// eta_rho(t) = 1 + rho*t; for rho = inf returns t itself (the multiplicative
/// convention, where the circle operation becomes the product).
/// Throws DomainError if rho = inf and t <= 0.
double eta(const PopaParam& param, double t);

/// Popa circle: s o t = s + t*(1 + rho*s) for finite rho, s*t for rho = inf.
/// Both arguments must lie in the group domain.
double circle(const PopaParam& param, double s, double t);

/// Group inverse: solves circle(x, y) = identity. -x/(1 + rho*x) for finite
/// rho, 1/x for rho = inf. Throws SingularityError when eta_rho(x) = 0.
double inverse(const PopaParam& param, double x);

/// |eta(s o t) - eta(s)*eta(t)|: the Golab-Schinzel defect, zero up to
/// rounding for every member of the eta_rho family.
double gs_residual(const PopaParam& param, double s, double t);

/// A value tagged with its group; construction checks membership.
class GroupElement {
 public:
  GroupElement(double value, const PopaParam& param);

  double value() const { return value_; }
  const PopaParam& param() const { return param_; }

  GroupElement compose(const GroupElement& other) const;
  GroupElement inverted() const;

 private:
  double value_;
  PopaParam param_;
};

}  // namespace regvar::popa

#endif  // REGVAR_POPA_HPP
