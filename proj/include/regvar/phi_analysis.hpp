// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Numerical analysis of auxiliary functions phi: the empirical ratio
// eta_x(t) = phi(x + t*phi(x))/phi(x), the fitted limit parameter rho, and
// the self-equivarying / self-neglecting classification.

#ifndef REGVAR_PHI_ANALYSIS_HPP
#define REGVAR_PHI_ANALYSIS_HPP

#include <string>
#include <vector>

#include "regvar/functions.hpp"

namespace regvar::phi {

enum class PhiClass { SE, SN, rejected };

struct PhiAnalysis {
  double rho_hat = 0.0;
  double sup_deviation = 0.0;  // max over the whole (x, t) grid of |eta_x(t) - (1 + rho_hat*t)|
  std::vector<double> deviation_profile;  // per x: sup over the t grid
  std::vector<double> ox_profile;         // per x: phi(x)/x
  double o_x_ratio = 0.0;                 // max of ox_profile
  PhiClass classification = PhiClass::rejected;
  bool eta_converged = false;  // deviation profile decreasing and small at the far end
  std::string note;
};

struct PhiOptions {
  std::vector<double> x_grid;  // default: geometric, 10 .. 1e8, ratio 10
  std::vector<double> t_grid;  // default: 31 points on [0, 3]
  double conv_tol = 1e-2;      // final deviation threshold for convergence
  double rho_zero_tol = 1e-3;  // |rho_hat| below this counts as 0 (SN)
  double ox_zero_tol = 1e-2;   // phi(x)/x below this at the far end counts as o(x)
};

PhiOptions default_phi_options();

/// eta_x(t) = phi(x + t*phi(x)) / phi(x). Throws EvalError if phi(x) <= 0.
double eta_empirical(const FunctionSpec& phi, double x, double t);

/// Fits rho by least squares of (eta_x(t) - 1) against t at the largest grid
/// x (through the origin: eta_x(0) = 1 identically), verifies convergence
/// across the x grid, and classifies phi. Exact for affine phi.
PhiAnalysis estimate_rho(const FunctionSpec& phi, const PhiOptions& opts = default_phi_options());

std::string phi_class_name(PhiClass c);

}  // namespace regvar::phi

#endif  // REGVAR_PHI_ANALYSIS_HPP
