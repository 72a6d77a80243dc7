// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Grid-based essential limits with an exceptional-set budget: the desk-scale
// surrogate for "for each eps there is X_eps and a meagre M_eps with
// |f(x) - L| < eps for all x > X_eps off M_eps". Meagre sets have no finite
// analogue, so the exceptional set becomes a point-fraction budget delta per
// tail window, which keeps the definition's logical shape and makes the
// closure laws literally checkable by counting.

#ifndef REGVAR_ESSLIM_HPP
#define REGVAR_ESSLIM_HPP

#include <optional>
#include <string>
#include <vector>

namespace regvar::esslim {

struct SampledFunction {
  std::vector<double> x;       // strictly increasing
  std::vector<double> value;   // finite
  std::string metadata;        // source descriptor (spike parameters etc.)
};

SampledFunction make_sampled(std::vector<double> x, std::vector<double> value,
                             std::string metadata = "");

enum class Verdict { converges, diverges, inconclusive };

struct EpsilonEntry {
  double epsilon = 0.0;
  double x_threshold = 0.0;       // X_eps
  double exceptional_fraction = 0.0;  // violating fraction beyond X_eps
  bool certified = false;
  bool short_window = false;      // a cut exists only with too few tail points
};

struct EssLimResult {
  std::optional<double> limit;
  std::vector<EpsilonEntry> epsilon_profile;
  Verdict verdict = Verdict::inconclusive;
  std::size_t min_tail = 0;       // certification window floor used
};

/// Candidate L is the median of the last decile of values; certification is
/// independent of that choice. For each eps (decreasing ladder) the smallest
/// X_eps is found such that the fraction of samples beyond it violating
/// |f - L| < eps stays within delta; thresholds are nondecreasing down the
/// ladder. Requires >= 1000 samples and 0 <= delta < 0.5.
EssLimResult ess_lim(const SampledFunction& samples,
                     const std::vector<double>& epsilons, double delta);

std::string verdict_name(Verdict v);

struct CombineReport {
  EssLimResult f, g, sum, product;
  bool sum_law_holds = false;       // L_{f+g} = L_f + L_g within 2*eps_min
  bool product_law_holds = false;   // L_{fg} = L_f * L_g within tolerance
  // Counting check of the union bound: points beyond both thresholds where
  // the sum violates 2*eps while f and g are each within eps. Zero exactly
  // whenever the triangle inequality applies, i.e. always.
  std::size_t union_bound_violations = 0;
};

/// Lemma-style closure check for sums and products on a common grid; the
/// combined runs get the added budget delta_f + delta_g = 2*delta.
CombineReport ess_lim_combine_check(const SampledFunction& f,
                                    const SampledFunction& g,
                                    const std::vector<double>& epsilons,
                                    double delta);

}  // namespace regvar::esslim

#endif  // REGVAR_ESSLIM_HPP
