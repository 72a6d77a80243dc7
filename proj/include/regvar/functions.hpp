// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_FUNCTIONS_HPP
#define REGVAR_FUNCTIONS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace regvar {

/// A real function of one real variable: a named builtin analytic form, a
/// tabulated sample set (linear interpolation), or any callable supplied by
/// the caller. Evaluation throws EvalError outside the domain.
///
/// Builtin corpus (addressable by name in configs):
///   pow_slowvar(kappa, ell)   x^kappa * ell(x), ell in {one, log, log2,
///                             loglog, exp_sqrt_log} (log2 = squared log)
///   const(c)                  c
///   sin_osc                   2 + sin x
///   affine_phi(a, rho)        a + rho*x
///   sqrt_phi                  sqrt(x)
///   shifted_pow(kappa)        (1+x)^kappa
///   const_plus_inv(c)         c + 1/x
///   const_plus_exp_decay(c)   c + e^{-x}
///   scaled(c, base)           c * base(x)
///   inv(base)                 1 / base(x)
///   spiked(base, frac, h)     base(x), except a deterministic seeded
///                             fraction of points is overwritten to h
class FunctionSpec {
 public:
  using Fn = std::function<double(double)>;

  FunctionSpec() = default;
  FunctionSpec(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  double operator()(double x) const;
  bool empty() const { return !fn_; }
  const std::string& name() const { return name_; }

  /// Parses a builtin spec like "pow_slowvar(1.7, log2)" or a nested
  /// "spiked(const_plus_inv(2), 0.001, 100)". The seed pins spike placement.
  static FunctionSpec parse(const std::string& text, std::uint64_t seed = 0);

  /// Piecewise-linear interpolant of (x, value) samples with strictly
  /// increasing x; evaluation outside [x_front, x_back] throws.
  static FunctionSpec tabulated(std::string name,
                                std::vector<std::pair<double, double>> points);

 private:
  std::string name_;
  Fn fn_;
};

/// Strict CSV with header "x,value": malformed rows and unsorted x are hard
/// errors, never skipped.
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);
void write_xy_csv(const std::string& path,
                  const std::vector<std::pair<double, double>>& rows);

}  // namespace regvar

#endif  // REGVAR_FUNCTIONS_HPP
