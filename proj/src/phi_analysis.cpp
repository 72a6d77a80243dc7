// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/phi_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "regvar/errors.hpp"

namespace regvar::phi {

PhiOptions default_phi_options() {
  PhiOptions o;
  for (double x = 10.0; x <= 1.0e8 * 1.0001; x *= 10.0) o.x_grid.push_back(x);
  const int tn = 31;
  for (int i = 0; i < tn; ++i)
    o.t_grid.push_back(3.0 * static_cast<double>(i) / (tn - 1));
  return o;
}

double eta_empirical(const FunctionSpec& phi, double x, double t) {
  const double px = phi(x);
  if (px == 0.0) throw EvalError("eta_empirical: phi(x) = 0, ratio undefined");
  if (px < 0.0) throw EvalError("eta_empirical: phi must be positive");
  return phi(x + t * px) / px;
}

std::string phi_class_name(PhiClass c) {
  switch (c) {
    case PhiClass::SE: return "SE";
    case PhiClass::SN: return "SN";
    case PhiClass::rejected: return "rejected";
  }
  return "?";
}

PhiAnalysis estimate_rho(const FunctionSpec& phi, const PhiOptions& opts) {
  if (opts.x_grid.empty() || opts.t_grid.empty())
    throw DomainError("estimate_rho: grids must be nonempty");
  for (std::size_t i = 1; i < opts.x_grid.size(); ++i) {
    if (!(opts.x_grid[i - 1] < opts.x_grid[i]))
      throw DomainError("estimate_rho: x grid must be increasing");
  }

  PhiAnalysis out;

  // Slope through the origin at the largest x: eta_x(0) = 1 exactly.
  const double x_top = opts.x_grid.back();
  double stt = 0.0, sty = 0.0;
  for (double t : opts.t_grid) {
    const double y = eta_empirical(phi, x_top, t) - 1.0;
    stt += t * t;
    sty += t * y;
  }
  if (stt == 0.0) throw DomainError("estimate_rho: t grid has no spread");
  out.rho_hat = sty / stt;

  out.deviation_profile.reserve(opts.x_grid.size());
  out.ox_profile.reserve(opts.x_grid.size());
  for (double x : opts.x_grid) {
    double dev = 0.0;
    for (double t : opts.t_grid) {
      const double d = std::fabs(eta_empirical(phi, x, t) - (1.0 + out.rho_hat * t));
      dev = std::max(dev, d);
    }
    out.deviation_profile.push_back(dev);
    out.sup_deviation = std::max(out.sup_deviation, dev);
    out.ox_profile.push_back(phi(x) / x);
  }
  out.o_x_ratio = *std::max_element(out.ox_profile.begin(), out.ox_profile.end());

  // Convergence: deviations non-increasing over the last three grid points
  // and small at the far end.
  const std::size_t n = out.deviation_profile.size();
  bool tail_decreasing = true;
  if (n >= 3) {
    for (std::size_t i = n - 3; i + 1 < n; ++i) {
      if (out.deviation_profile[i + 1] > out.deviation_profile[i] + 1e-15)
        tail_decreasing = false;
    }
  }
  out.eta_converged = tail_decreasing && out.deviation_profile.back() < opts.conv_tol;

  // Unbounded phi(x)/x witness: ratios growing through the last three points
  // by an overall factor >= 10.
  bool ratio_growing = false;
  if (n >= 3) {
    ratio_growing = out.ox_profile[n - 1] > out.ox_profile[n - 2] &&
                    out.ox_profile[n - 2] > out.ox_profile[n - 3] &&
                    out.ox_profile[n - 1] > 10.0 * out.ox_profile.front();
  }

  if (!out.eta_converged) {
    out.classification = PhiClass::rejected;
    out.note = "eta_x(t) deviations do not settle across the x grid";
  } else if (ratio_growing) {
    out.classification = PhiClass::rejected;
    out.note = "phi(x)/x grows without bound on the grid";
  } else if (std::fabs(out.rho_hat) <= opts.rho_zero_tol &&
             out.ox_profile.back() < opts.ox_zero_tol) {
    out.classification = PhiClass::SN;
    out.note = "self-neglecting: rho ~ 0 and phi(x)/x -> 0";
  } else {
    out.classification = PhiClass::SE;
    out.note = "self-equivarying with eta(t) = 1 + rho*t";
  }
  return out;
}

}  // namespace regvar::phi
