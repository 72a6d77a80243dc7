// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/kernels.hpp"

#include <cmath>

#include "regvar/errors.hpp"

namespace regvar::kernels {

namespace {

void require_domain(const KernelSpec& spec, double t) {
  if (!std::isfinite(t) || !spec.r.in_domain(t))
    throw DomainError("kernel_eval: t outside (r.boundary(), inf)");
}

bool is_zero(const PopaParam& p) { return !p.is_infinite() && p.rho() == 0.0; }

// log W_r(t): t for r = 0, log(1+rt) for finite r, log t for r = inf.
double log_w(const PopaParam& r, double t) {
  if (r.is_infinite()) return std::log(t);
  if (r.rho() == 0.0) return t;
  return std::log1p(r.rho() * t);
}

}  // namespace

EquationClass classify(const PopaParam& r, const PopaParam& s) {
  if (is_zero(r) && is_zero(s)) return EquationClass::cfe_additive;
  if (r.is_infinite() && s.is_infinite()) return EquationClass::cfe_multiplicative;
  if (is_zero(r)) return EquationClass::goldie;
  if (s.is_infinite()) return EquationClass::cj;
  return EquationClass::bg_general;
}

std::string equation_class_name(EquationClass c) {
  switch (c) {
    case EquationClass::cfe_additive: return "CFE_additive";
    case EquationClass::cfe_multiplicative: return "CFE_multiplicative";
    case EquationClass::goldie: return "Goldie";
    case EquationClass::cj: return "CJ";
    case EquationClass::bg_general: return "BG_general";
  }
  return "?";
}

double kernel_eval(const KernelSpec& spec, double t) {
  require_domain(spec, t);
  const double lw = log_w(spec.r, t);  // so K = W_s^{-1}(exp(kappa*lw))
  if (spec.s.is_infinite()) return std::exp(spec.kappa * lw);
  if (spec.s.rho() == 0.0) return spec.kappa * lw;
  return std::expm1(spec.kappa * lw) / spec.s.rho();
}

double kernel_eval_isomorphic(const KernelSpec& spec, double t) {
  require_domain(spec, t);
  double w;  // W_r(t)
  if (spec.r.is_infinite()) w = t;
  else if (spec.r.rho() == 0.0) w = std::exp(t);
  else w = 1.0 + spec.r.rho() * t;
  const double y = std::pow(w, spec.kappa);
  if (spec.s.is_infinite()) return y;
  if (spec.s.rho() == 0.0) return std::log(y);
  return (y - 1.0) / spec.s.rho();
}

double bg_residual(const KernelSpec& spec, double u, double v) {
  return bg_residual_fn([&spec](double t) { return kernel_eval(spec, t); },
                        spec.r, spec.s, u, v);
}

double bg_residual_fn(const std::function<double(double)>& kernel,
                      const PopaParam& r, const PopaParam& s,
                      double u, double v) {
  const double lhs = kernel(popa::circle(r, u, v));
  const double rhs = popa::circle(s, kernel(u), kernel(v));
  return std::fabs(lhs - rhs);
}

double cj_residual(const KernelSpec& spec, double u, double v) {
  if (!spec.s.is_infinite())
    throw DomainError("cj_residual: requires s = inf");
  const double lhs = kernel_eval(spec, popa::circle(spec.r, u, v));
  return std::fabs(lhs - kernel_eval(spec, u) * kernel_eval(spec, v));
}

double sigma_relation_check(const KernelSpec& spec, double u) {
  if (spec.s.is_infinite())
    throw DomainError("sigma_relation_check: s = inf excluded (sigma is the product rule)");
  if (spec.kappa == 0.0)
    throw SingularityError("sigma_relation_check: kappa = 0, kernel not invertible");
  require_domain(spec, u);

  const double h = 1e-6;
  const double e = spec.r.identity();
  const double wp = e + h;
  const double wm = e - h;  // still inside the domain for this step size
  const double num = kernel_eval(spec, popa::circle(spec.r, u, wp)) -
                     kernel_eval(spec, popa::circle(spec.r, u, wm));
  const double den = kernel_eval(spec, wp) - kernel_eval(spec, wm);
  const double r_recovered = num / den;
  const double sigma_at_k = 1.0 + spec.s.rho() * kernel_eval(spec, u);
  return std::fabs(sigma_at_k - r_recovered);
}

bool is_trivial(const std::vector<double>& values, double tol) {
  if (values.empty()) throw DomainError("is_trivial: empty list");
  for (double v : values) {
    if (std::fabs(v) > tol && std::fabs(v - 1.0) > tol) return false;
  }
  return true;
}

std::string kernel_formula_text(const PopaParam& r, const PopaParam& s) {
  std::string inner;
  if (r.is_infinite()) inner = "t";
  else if (r.rho() == 0.0) inner = "";
  else inner = "(1+" + r.to_string() + "t)";

  if (s.is_infinite()) {
    if (inner.empty()) return "e^(kt)";
    return inner + "^k";
  }
  if (s.rho() == 0.0) {
    if (inner.empty()) return "k*t";
    return "k*log" + inner;
  }
  const std::string den = "/" + s.to_string();
  if (inner.empty()) return "(e^(kt)-1)" + den;
  return "(" + inner + "^k-1)" + den;
}

}  // namespace regvar::kernels
