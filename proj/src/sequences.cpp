// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "regvar/errors.hpp"
#include "regvar/parallel.hpp"

namespace regvar::seq {

double SequenceSpec::term(std::uint64_t n) const {
  if (n == 0) throw DomainError("SequenceSpec: indices are 1-based");
  const double nd = static_cast<double>(n);
  switch (family_) {
    case Family::identity:
      return nd;
    case Family::log_ramp:
      return param_ * std::log(nd);
    case Family::power_ramp:
      return std::pow(nd, param_);
    case Family::rational_sweep: {
      const auto m = static_cast<std::uint64_t>(std::floor(std::sqrt(nd)));
      const std::uint64_t j = n - m * m;  // 0 .. 2m
      return static_cast<double>(m) +
             static_cast<double>(j) / static_cast<double>(2 * m + 1);
    }
    case Family::tabulated:
      if (n > data_->size())
        throw DomainError("SequenceSpec(" + name_ + "): index beyond tabulated data");
      return (*data_)[n - 1];
  }
  throw DomainError("SequenceSpec: unknown family");
}

std::vector<double> SequenceSpec::prefix(std::uint64_t count) const {
  std::vector<double> out(count);
  for (std::uint64_t n = 1; n <= count; ++n) out[n - 1] = term(n);
  return out;
}

SequenceSpec SequenceSpec::identity(AdmissibilityKind kind) {
  SequenceSpec s;
  s.family_ = Family::identity;
  s.kind_ = kind;
  s.name_ = "identity";
  return s;
}

SequenceSpec SequenceSpec::log_ramp(double beta) {
  SequenceSpec s;
  s.family_ = Family::log_ramp;
  s.param_ = beta;
  s.kind_ = AdmissibilityKind::additive;
  std::ostringstream os;
  os << "log_ramp(" << beta << ")";
  s.name_ = os.str();
  return s;
}

SequenceSpec SequenceSpec::power_ramp(double alpha, AdmissibilityKind kind) {
  if (!(alpha > 0.0)) throw DomainError("power_ramp: alpha must be > 0");
  SequenceSpec s;
  s.family_ = Family::power_ramp;
  s.param_ = alpha;
  s.kind_ = kind;
  std::ostringstream os;
  os << "power_ramp(" << alpha << ")";
  s.name_ = os.str();
  return s;
}

SequenceSpec SequenceSpec::rational_sweep() {
  SequenceSpec s;
  s.family_ = Family::rational_sweep;
  s.kind_ = AdmissibilityKind::additive;
  s.name_ = "rational_sweep";
  return s;
}

SequenceSpec SequenceSpec::tabulated(std::string name, std::vector<double> terms,
                                     AdmissibilityKind kind) {
  if (terms.empty()) throw DomainError("SequenceSpec::tabulated: empty data");
  SequenceSpec s;
  s.family_ = Family::tabulated;
  s.kind_ = kind;
  s.name_ = std::move(name);
  s.data_ = std::make_shared<const std::vector<double>>(std::move(terms));
  return s;
}

SequenceSpec SequenceSpec::parse(const std::string& text, AdmissibilityKind kind) {
  const auto open = text.find('(');
  const std::string name = text.substr(0, open);
  double arg = 0.0;
  bool has_arg = false;
  if (open != std::string::npos) {
    if (text.back() != ')') throw ConfigError("sequence spec '" + text + "': missing ')'");
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    try {
      std::size_t used = 0;
      arg = std::stod(inner, &used);
      if (used != inner.size()) throw std::invalid_argument(inner);
      has_arg = true;
    } catch (const std::exception&) {
      throw ConfigError("sequence spec '" + text + "': bad argument '" + inner + "'");
    }
  }
  if (name == "identity") return identity(kind);
  if (name == "log_ramp") return log_ramp(has_arg ? arg : 1.0);
  if (name == "power_ramp") {
    if (!has_arg) throw ConfigError("power_ramp requires an exponent");
    return power_ramp(arg, kind);
  }
  if (name == "sqrt_ramp") return power_ramp(0.5, kind);
  if (name == "rational_sweep") return rational_sweep();
  throw ConfigError("unknown sequence family '" + name + "'");
}

AdmissibilityReport admissibility_report(const std::vector<double>& prefix,
                                         AdmissibilityKind kind,
                                         std::size_t n0, double tol) {
  if (prefix.size() < n0 + 2)
    throw DomainError("admissibility_report: prefix shorter than n0 + 2");
  if (!(tol > 0.0)) throw DomainError("admissibility_report: tol must be > 0");

  AdmissibilityReport rep;
  rep.worst_gap = 0.0;
  rep.worst_index = n0;
  for (std::size_t n = n0; n + 1 < prefix.size(); ++n) {
    double gap;
    if (kind == AdmissibilityKind::additive) {
      gap = std::fabs(prefix[n + 1] - prefix[n]);
    } else {
      if (!(prefix[n] > 0.0) || !(prefix[n + 1] > 0.0))
        throw DomainError("admissibility_report: nonpositive term under multiplicative kind");
      gap = std::fabs(prefix[n + 1] / prefix[n] - 1.0);
    }
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_index = n;
    }
  }
  const double max_v = *std::max_element(prefix.begin(), prefix.end());
  rep.divergence_witness = max_v >= 10.0 * prefix.front();
  rep.passes = rep.worst_gap < tol && rep.divergence_witness;
  if (rep.passes) {
    rep.verdict_text = "consistent with admissible";
  } else if (!rep.divergence_witness) {
    rep.verdict_text = "fails: no divergence witness in prefix";
  } else {
    std::ostringstream os;
    os << "fails: gap " << rep.worst_gap << " at index " << rep.worst_index
       << " exceeds tol " << tol;
    rep.verdict_text = os.str();
  }
  return rep;
}

bool OpenSetDescriptor::contains(double x) const {
  for (const auto& w : windows) {
    if (x > w.lo && x < w.hi) return true;
  }
  if (period > 0.0) {
    double frac = std::fmod(x, period);
    if (frac < 0.0) frac += period;
    for (const auto& c : cells) {
      if (frac > c.lo && frac < c.hi) return true;
    }
  }
  return false;
}

bool OpenSetDescriptor::unbounded() const {
  if (period > 0.0 && !cells.empty()) return true;
  for (const auto& w : windows) {
    if (std::isinf(w.hi)) return true;
  }
  return false;
}

OpenSetDescriptor OpenSetDescriptor::periodic(double period, std::vector<Interval> cells) {
  if (!(period > 0.0)) throw DomainError("OpenSetDescriptor: period must be > 0");
  for (const auto& c : cells) {
    if (!(0.0 <= c.lo && c.lo < c.hi && c.hi <= period))
      throw DomainError("OpenSetDescriptor: cells must be sub-intervals of [0, period)");
  }
  OpenSetDescriptor g;
  g.period = period;
  g.cells = std::move(cells);
  return g;
}

OpenSetDescriptor OpenSetDescriptor::half_line(double from) {
  OpenSetDescriptor g;
  g.windows.push_back({from, std::numeric_limits<double>::infinity()});
  return g;
}

HitReport croft_hit_search(const SequenceSpec& seq, Interval I,
                           const OpenSetDescriptor& G, std::uint64_t N,
                           std::size_t probe_grid, std::size_t index_cap) {
  if (!(I.lo < I.hi)) throw DomainError("croft_hit_search: degenerate interval I");
  if (!G.unbounded())
    throw DomainError("croft_hit_search: G must have unbounded extension");
  if (probe_grid == 0 || N == 0)
    throw DomainError("croft_hit_search: need probe_grid >= 1 and N >= 1");

  const std::vector<double> c = seq.prefix(N);

  // Interior probe grid; odd counts place a probe at the midpoint of I.
  std::vector<double> probes(probe_grid);
  const double step = (I.hi - I.lo) / static_cast<double>(probe_grid + 1);
  for (std::size_t i = 0; i < probe_grid; ++i)
    probes[i] = I.lo + step * static_cast<double>(i + 1);

  std::vector<std::uint64_t> counts(probe_grid, 0);
  parallel_for(probe_grid, [&](std::size_t i) {
    const double x = probes[i];
    std::uint64_t cnt = 0;
    for (double cn : c) {
      if (G.contains(cn + x)) ++cnt;
    }
    counts[i] = cnt;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < probe_grid; ++i) {
    if (counts[i] > counts[best]) best = i;  // ties keep the smaller probe
  }

  HitReport rep;
  rep.probe = probes[best];
  rep.hit_count = counts[best];
  std::uint64_t prev = 0;
  bool have_prev = false;
  std::uint64_t gmin = std::numeric_limits<std::uint64_t>::max(), gmax = 0, gsum = 0, gcnt = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (!G.contains(c[n - 1] + rep.probe)) continue;
    if (rep.hit_indices.size() < index_cap) rep.hit_indices.push_back(n);
    else rep.indices_truncated = true;
    if (have_prev) {
      const std::uint64_t gap = n - prev;
      gmin = std::min(gmin, gap);
      gmax = std::max(gmax, gap);
      gsum += gap;
      ++gcnt;
    }
    prev = n;
    have_prev = true;
  }
  rep.gap_stats.count = rep.hit_count;
  if (gcnt > 0) {
    rep.gap_stats.min_gap = gmin;
    rep.gap_stats.max_gap = gmax;
    rep.gap_stats.mean_gap = static_cast<double>(gsum) / static_cast<double>(gcnt);
  }
  return rep;
}

double phi_dilation(double q, double lambda, double s, const FunctionSpec& phi) {
  const double pq = phi(q);
  const double mid = q + lambda * pq;
  return mid + s * phi(mid);
}

DilationSolution phi_dilation_solve(const FunctionSpec& phi, double lambda,
                                    double a_target, double b_target,
                                    double q_tol) {
  if (!(a_target >= 0.0) || !(lambda >= 0.0))
    throw DomainError("phi_dilation_solve: requires a_target >= 0 and lambda >= 0");
  if (!(q_tol > 0.0)) throw DomainError("phi_dilation_solve: q_tol must be > 0");

  const auto F = [&](double x) { return phi_dilation(x, lambda, a_target, phi) - b_target; };

  // h_x(a) >= x for positive phi, so x = b_target always overshoots;
  // feasibility only depends on the lower end of the bracket.
  double lo = 1e-9;
  double flo = F(lo);
  if (flo > 0.0) {
    std::ostringstream os;
    os << "phi_dilation_solve: b_target = " << b_target
       << " below the solvable range; minimal feasible b on the search range is "
       << (flo + b_target);
    throw DomainError(os.str());
  }
  double hi = std::max(1.0, b_target);
  double fhi = F(hi);
  while (fhi < 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw DomainError("phi_dilation_solve: no bracket found");
    fhi = F(hi);
  }
  if (flo == 0.0) hi = lo;

  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = F(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);

  DilationSolution sol;
  sol.x_root = root;
  sol.q = rationalize(root, q_tol);
  sol.residual = std::fabs(phi_dilation(sol.q.value(), lambda, a_target, phi) - b_target);

  // Local modulus of continuity of x -> h_x(a) across the rationalization
  // window, stretched by a factor 2 safety margin.
  const double w = std::max(q_tol, hi - lo);
  const double eval_lo = std::max({root - w, root * 0.5, 1e-12});
  const double span = std::fabs(phi_dilation(root + w, lambda, a_target, phi) -
                                phi_dilation(eval_lo, lambda, a_target, phi));
  sol.residual_bound = 2.0 * span;
  return sol;
}

}  // namespace regvar::seq
