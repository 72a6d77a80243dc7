// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/esslim.hpp"

#include <algorithm>
#include <cmath>

#include "regvar/errors.hpp"

namespace regvar::esslim {

SampledFunction make_sampled(std::vector<double> x, std::vector<double> value,
                             std::string metadata) {
  if (x.size() != value.size())
    throw DomainError("SampledFunction: x/value size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(value[i]))
      throw DomainError("SampledFunction: non-finite sample");
    if (i > 0 && !(x[i - 1] < x[i]))
      throw DomainError("SampledFunction: x must be strictly increasing");
  }
  return SampledFunction{std::move(x), std::move(value), std::move(metadata)};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converges: return "converges";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EssLimResult ess_lim(const SampledFunction& samples,
                     const std::vector<double>& epsilons, double delta) {
  const std::size_t n = samples.value.size();
  if (n < 1000) throw DomainError("ess_lim: need at least 1000 samples");
  if (epsilons.empty()) throw DomainError("ess_lim: empty epsilon ladder");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1]))
      throw DomainError("ess_lim: epsilons must be strictly decreasing");
  }
  if (!(delta >= 0.0 && delta < 0.5))
    throw DomainError("ess_lim: delta must be in [0, 0.5)");

  EssLimResult out;
  out.min_tail = std::max<std::size_t>(30, n / 20);

  const std::size_t decile = std::max<std::size_t>(1, n / 10);
  const double L = median_of(std::vector<double>(samples.value.end() - decile,
                                                 samples.value.end()));
  out.limit = L;

  bool all_certified = true;
  bool any_hard_fail = false;
  std::size_t cut = 0;  // X_eps nondecreasing as eps decreases
  for (double eps : epsilons) {
    // Suffix violation counts for this epsilon.
    std::vector<std::size_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      suffix[i] = suffix[i + 1] +
                  (std::fabs(samples.value[i] - L) >= eps ? 1u : 0u);
    }
    const auto valid = [&](std::size_t i) {
      const std::size_t tail = n - i;
      return static_cast<double>(suffix[i]) <= delta * static_cast<double>(tail);
    };

    EpsilonEntry entry;
    entry.epsilon = eps;
    bool found = false;
    for (std::size_t i = cut; i + out.min_tail <= n; ++i) {
      if (valid(i)) {
        entry.certified = true;
        entry.x_threshold = samples.x[i];
        entry.exceptional_fraction =
            static_cast<double>(suffix[i]) / static_cast<double>(n - i);
        cut = i;
        found = true;
        break;
      }
    }
    if (!found) {
      all_certified = false;
      // Distinguish "certifiable but the window is too short" from a hard
      // failure with no admissible cut at all.
      bool short_ok = false;
      for (std::size_t i = n > out.min_tail ? n - out.min_tail + 1 : 0; i < n; ++i) {
        if (i >= cut && valid(i)) {
          short_ok = true;
          entry.x_threshold = samples.x[i];
          entry.exceptional_fraction =
              static_cast<double>(suffix[i]) / static_cast<double>(n - i);
          break;
        }
      }
      entry.short_window = short_ok;
      if (!short_ok) any_hard_fail = true;
    }
    out.epsilon_profile.push_back(entry);
  }

  if (all_certified) out.verdict = Verdict::converges;
  else if (any_hard_fail) out.verdict = Verdict::diverges;
  else out.verdict = Verdict::inconclusive;
  return out;
}

CombineReport ess_lim_combine_check(const SampledFunction& f,
                                    const SampledFunction& g,
                                    const std::vector<double>& epsilons,
                                    double delta) {
  if (f.x.size() != g.x.size())
    throw DomainError("ess_lim_combine_check: grids differ in size");
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    if (f.x[i] != g.x[i])
      throw DomainError("ess_lim_combine_check: grids must be identical");
  }

  CombineReport rep;
  rep.f = ess_lim(f, epsilons, delta);
  rep.g = ess_lim(g, epsilons, delta);

  const std::size_t n = f.x.size();
  std::vector<double> sum(n), prod(n);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i] = f.value[i] + g.value[i];
    prod[i] = f.value[i] * g.value[i];
  }
  const double combined_delta = std::min(0.499, 2.0 * delta);  // budgets add
  rep.sum = ess_lim(make_sampled(f.x, std::move(sum)), epsilons, combined_delta);
  rep.product = ess_lim(make_sampled(f.x, std::move(prod)), epsilons, combined_delta);

  if (rep.f.verdict == Verdict::converges && rep.g.verdict == Verdict::converges) {
    const double eps_min = epsilons.back();
    if (rep.sum.verdict == Verdict::converges) {
      rep.sum_law_holds =
          std::fabs(*rep.sum.limit - (*rep.f.limit + *rep.g.limit)) <= 2.0 * eps_min;
    }
    if (rep.product.verdict == Verdict::converges) {
      // |fg - Lf Lg| <= eps(|Lf| + |Lg| + eps) when both factors are within eps.
      const double tol = eps_min * (std::fabs(*rep.f.limit) + std::fabs(*rep.g.limit) + eps_min);
      rep.product_law_holds = std::fabs(*rep.product.limit - *rep.f.limit * *rep.g.limit) <= tol;
    }

    // The union-bound count: beyond both thresholds, a sum violation at
    // 2*eps forces a violation of f or of g at eps.
    const double eps = eps_min;
    double xf = 0.0, xg = 0.0;
    for (const auto& e : rep.f.epsilon_profile) {
      if (e.epsilon == eps && e.certified) xf = e.x_threshold;
    }
    for (const auto& e : rep.g.epsilon_profile) {
      if (e.epsilon == eps && e.certified) xg = e.x_threshold;
    }
    const double x0 = std::max(xf, xg);
    for (std::size_t i = 0; i < n; ++i) {
      if (f.x[i] <= x0) continue;
      const bool sum_bad =
          std::fabs((f.value[i] + g.value[i]) - (*rep.f.limit + *rep.g.limit)) >= 2.0 * eps;
      const bool f_ok = std::fabs(f.value[i] - *rep.f.limit) < eps;
      const bool g_ok = std::fabs(g.value[i] - *rep.g.limit) < eps;
      if (sum_bad && f_ok && g_ok) ++rep.union_bound_violations;
    }
  }
  return rep;
}

}  // namespace regvar::esslim
