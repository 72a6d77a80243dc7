// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/kendall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "regvar/errors.hpp"
#include "regvar/kernels.hpp"
#include "regvar/parallel.hpp"
#include "regvar/phi_analysis.hpp"

namespace regvar::kendall {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::karamata: return "karamata";
    case Mode::beurling: return "beurling";
    case Mode::general: return "general";
  }
  return "?";
}

double GroupCoord::zeta(double lambda) const {
  if (r.is_infinite()) {
    if (!(lambda > 0.0)) throw DomainError("GroupCoord: lambda must be > 0 in the multiplicative group");
    return std::log(lambda);
  }
  if (r.rho() == 0.0) return lambda;
  if (!r.in_domain(lambda)) throw DomainError("GroupCoord: lambda outside the group domain");
  return std::log1p(r.rho() * lambda);
}

double GroupCoord::lambda_of(double zeta) const {
  if (r.is_infinite()) return std::exp(zeta);
  if (r.rho() == 0.0) return zeta;
  return std::expm1(zeta) / r.rho();
}

void TestSet::validate() const {
  if (!(lo < hi)) throw DomainError("TestSet: need lo < hi");
  auto sorted = holes;
  std::sort(sorted.begin(), sorted.end());
  double prev_hi = lo;
  for (const auto& [a, b] : sorted) {
    if (!(a < b)) throw DomainError("TestSet: degenerate hole");
    if (a < prev_hi) throw DomainError("TestSet: holes must be disjoint and inside [lo, hi]");
    if (b > hi) throw DomainError("TestSet: hole exceeds the base interval");
    prev_hi = b;
  }
  if (!(total_length() > 0.0)) throw DomainError("TestSet: empty after removals");
}

bool TestSet::contains(double x) const {
  const double snap = 1e-12 * (1.0 + std::fabs(x));
  if (x < lo - snap || x > hi + snap) return false;
  for (const auto& [a, b] : holes) {
    if (x > a && x < b) return false;
  }
  return true;
}

double TestSet::total_length() const {
  double len = hi - lo;
  for (const auto& [a, b] : holes) len -= (b - a);
  return len;
}

APolicy APolicy::given(FunctionSpec a) {
  APolicy p;
  p.reciprocal = false;
  p.a_of_n = std::move(a);
  return p;
}

std::vector<double> GHatTable::member_values() const {
  std::vector<double> out;
  for (const auto& e : entries) {
    if (e) out.push_back(e->value);
  }
  return out;
}

namespace {

// Log-spaced integer ladder on [lo, hi], deduplicated, endpoints included.
std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, int count) {
  std::vector<std::uint64_t> out;
  if (lo < 1) lo = 1;
  if (hi <= lo || count <= 1) return {hi};
  const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    const auto n = static_cast<std::uint64_t>(std::llround(lo * std::pow(ratio, f)));
    if (out.empty() || n > out.back()) out.push_back(std::min(n, hi));
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

struct Evaluator {
  const KendallInput& in;

  double compose(double x, double lambda) const {
    if (in.mode == Mode::karamata) return lambda * x;
    return x + lambda * in.phi(x);
  }

  // The per-n sequential estimate at test point lambda.
  double value(std::uint64_t n, double lambda) const {
    const double x = in.sequence.term(n);
    const double point = compose(x, lambda);
    if (in.mode == Mode::general) {
      const double hx = in.h(x);
      if (hx <= 0.0) throw DomainError("general mode: h must be positive along the sequence");
      double v = (in.f(point) - in.f(x)) / hx;
      if (!in.a_policy.reciprocal) v *= in.a_policy.a_of_n(static_cast<double>(n));
      return v;
    }
    if (in.a_policy.reciprocal) {
      const double fx = in.f(x);
      if (fx == 0.0) throw DomainError("reciprocal policy: f vanishes along the sequence");
      return in.f(point) / fx;  // division keeps g(identity) exactly 1
    }
    return in.a_policy.a_of_n(static_cast<double>(n)) * in.f(point);
  }
};

double fit_slope_through_origin(const std::vector<double>& xs,
                                const std::vector<double>& ys) {
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  if (sxx == 0.0) return 0.0;
  return sxy / sxx;
}

}  // namespace

GHatTable sequential_limits(const KendallInput& in, double rho_hat,
                            std::uint64_t N, const SeqLimOptions& opt) {
  in.B.validate();
  if (opt.grid_points < 3) throw DomainError("sequential_limits: need >= 3 grid points");
  if (N < 16) throw DomainError("sequential_limits: N too small");

  GHatTable g;
  g.coord.r = in.mode == Mode::karamata ? PopaParam::infinite()
                                        : PopaParam::finite(rho_hat);
  g.zeta0 = g.coord.zeta(in.B.lo);
  const double zeta1 = g.coord.zeta(in.B.hi);
  g.dzeta = (zeta1 - g.zeta0) / (opt.grid_points - 1);
  g.n_used = N;
  g.x_n = in.sequence.term(N);
  g.log_scale = std::log(g.x_n);
  if (!(g.log_scale > 0.0))
    throw DomainError("sequential_limits: sequence scale x_N must exceed 1");

  const std::uint64_t tail_lo = std::max<std::uint64_t>(1, (N * 9) / 10);
  const std::vector<std::uint64_t> sample_ns = log_spaced(tail_lo, N, opt.osc_samples);

  Evaluator ev{in};
  g.entries.assign(opt.grid_points, std::nullopt);
  std::vector<int> member_idx;
  std::vector<double> member_lambda;
  for (int j = 0; j < opt.grid_points; ++j) {
    double lam = g.lambda_at(j);
    // Snap the grid ends back onto B's endpoints (coordinate round trips
    // can slip by an ulp).
    if (std::fabs(lam - in.B.lo) < 1e-9 * (1.0 + std::fabs(in.B.lo))) lam = in.B.lo;
    if (std::fabs(lam - in.B.hi) < 1e-9 * (1.0 + std::fabs(in.B.hi))) lam = in.B.hi;
    if (in.B.contains(lam)) {
      member_idx.push_back(j);
      member_lambda.push_back(lam);
    }
  }
  if (member_idx.empty())
    throw PipelineError(FailureClass::data, "sequential_limits: no grid point lies in B");

  std::vector<GEntry> computed(member_idx.size());
  parallel_for(member_idx.size(), [&](std::size_t mi) {
    const double lam = member_lambda[mi];
    GEntry e;
    e.lambda = lam;
    e.value = ev.value(N, lam);
    double osc = 0.0;
    for (std::uint64_t n : sample_ns) {
      osc = std::max(osc, std::fabs(ev.value(n, lam) - e.value));
    }
    e.tail_oscillation = osc;
    e.convergent = osc <= opt.osc_tol * (1.0 + std::fabs(e.value));
    computed[mi] = e;
  });
  for (std::size_t mi = 0; mi < member_idx.size(); ++mi)
    g.entries[member_idx[mi]] = computed[mi];

  // The group-identity entry is 1 by construction under the reciprocal
  // policy, so it carries no convergence evidence on its own.
  const double identity = g.coord.r.identity();
  bool any_convergent = false;
  for (const auto& e : g.entries) {
    if (e && e->convergent && std::fabs(e->lambda - identity) > 1e-12)
      any_convergent = true;
  }
  if (!any_convergent) {
    std::ostringstream os;
    os << "sequential limits non-convergent at every lambda (max oscillation ";
    double worst = 0.0;
    for (const auto& e : g.entries) {
      if (e) worst = std::max(worst, e->tail_oscillation);
    }
    os << worst << " at N = " << N << ")";
    throw PipelineError(FailureClass::non_convergent, os.str());
  }
  return g;
}

const KEntry* KHatTable::at_offset(int k) const {
  for (const auto& e : entries) {
    if (e.offset == k) return &e;
  }
  return nullptr;
}

std::pair<double, double> KHatTable::feasible_window() const {
  if (entries.empty()) return {0.0, 0.0};
  return {entries.front().s, entries.back().s};
}

const KEntry& KHatTable::at_s(double s) const {
  const double zs = coord.zeta(s);
  const int k = static_cast<int>(std::llround(zs / dzeta));
  const KEntry* e = std::fabs(zs - k * dzeta) <= 1e-9 ? at_offset(k) : nullptr;
  if (!e) {
    const auto [slo, shi] = feasible_window();
    std::ostringstream os;
    os << "no anchors for s = " << s << "; feasible window is [" << slo << ", "
       << shi << "]";
    throw PipelineError(FailureClass::empty_anchors, os.str());
  }
  return *e;
}

KHatTable kernel_estimate(const GHatTable& g) {
  KHatTable k;
  k.coord = g.coord;
  k.dzeta = g.dzeta;
  const int m = static_cast<int>(g.entries.size());

  const auto usable = [&](int j) {
    return j >= 0 && j < m && g.entries[j] && g.entries[j]->convergent &&
           g.entries[j]->value != 0.0;
  };

  for (int off = -(m - 1); off <= m - 1; ++off) {
    std::vector<double> ratios;
    for (int j = 0; j < m; ++j) {
      if (usable(j) && usable(j + off))
        ratios.push_back(g.entries[j + off]->value / g.entries[j]->value);
    }
    if (ratios.empty()) continue;
    std::sort(ratios.begin(), ratios.end());
    KEntry e;
    e.offset = off;
    e.s = g.coord.lambda_of(off * g.dzeta);
    e.anchors = static_cast<int>(ratios.size());
    e.value = ratios.size() % 2 ? ratios[ratios.size() / 2]
                                : 0.5 * (ratios[ratios.size() / 2 - 1] +
                                         ratios[ratios.size() / 2]);
    e.spread = ratios.front() != 0.0 && (ratios.front() > 0) == (ratios.back() > 0)
                   ? std::fabs(ratios.back() / ratios.front()) - 1.0
                   : std::numeric_limits<double>::infinity();
    k.entries.push_back(e);
  }
  if (k.entries.size() <= 1) {
    throw PipelineError(FailureClass::empty_anchors,
                        "kernel_estimate: no s beyond the identity has anchors in B");
  }
  return k;
}

IndexFit fit_index(const KHatTable& k) {
  IndexFit fit;

  bool all_unit = true;
  for (const auto& e : k.entries) {
    if (std::fabs(e.value - 1.0) > 1e-9) all_unit = false;
    if (!(e.value > 0.0))
      throw PipelineError(FailureClass::data,
                          "fit_index: nonpositive kernel estimate, cannot fit log K");
  }
  if (all_unit) {
    fit.degenerate_unit = true;
    fit.kappa_hat = 0.0;
    fit.residual = 0.0;
  } else {
    std::vector<double> xs, ys;
    for (const auto& e : k.entries) {
      xs.push_back(e.offset * k.dzeta);
      ys.push_back(std::log(e.value));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw PipelineError(FailureClass::data, "fit_index: degenerate s grid");
    fit.kappa_hat = sxy / sxx;
    const double b = my - fit.kappa_hat * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
      fit.residual = std::max(fit.residual,
                              std::fabs(ys[i] - (fit.kappa_hat * xs[i] + b)));
  }

  for (const auto& e1 : k.entries) {
    for (const auto& e2 : k.entries) {
      if (e2.offset < e1.offset) continue;
      const KEntry* sum = k.at_offset(e1.offset + e2.offset);
      if (!sum) continue;
      fit.mult_residual = std::max(
          fit.mult_residual, std::fabs(sum->value - e1.value * e2.value));
    }
  }
  return fit;
}

double extrapolate_kappa(double kappa_main, double log_scale_main,
                         double kappa_aux, double log_scale_aux) {
  if (!(log_scale_aux > 0.0) || !(log_scale_main > log_scale_aux))
    throw DomainError("extrapolate_kappa: need 0 < log_scale_aux < log_scale_main");
  const double w = (1.0 / log_scale_main) /
                   (1.0 / log_scale_aux - 1.0 / log_scale_main);
  return kappa_main + (kappa_main - kappa_aux) * w;
}

CorollaryProfile verify_corollary(const KendallInput& in, double kappa_hat,
                                  const FunctionSpec& ell, std::uint64_t N,
                                  double tol) {
  CorollaryProfile out;
  const bool self_consistent = ell.empty();

  const auto r_at = [&](std::uint64_t n) {
    const double x = in.sequence.term(n);
    double a;
    if (in.a_policy.reciprocal) {
      const double fx = in.f(x);
      if (fx == 0.0) throw DomainError("verify_corollary: f vanishes along the sequence");
      a = 1.0 / fx;
    } else {
      a = in.a_policy.a_of_n(static_cast<double>(n));
    }
    const double ell_x = self_consistent ? in.f(x) / std::pow(x, kappa_hat) : ell(x);
    return a * std::pow(x, kappa_hat) * ell_x;
  };

  const std::uint64_t n_lo = std::max<std::uint64_t>(2, N / 1024);
  auto ns = log_spaced(n_lo, N, 33);
  if (std::find(ns.begin(), ns.end(), N / 2) == ns.end()) {
    ns.push_back(N / 2);
    std::sort(ns.begin(), ns.end());
  }
  for (std::uint64_t n : ns) {
    try {
      out.profile.emplace_back(n, r_at(n));
    } catch (const EvalError&) {
      // Early checkpoints may precede the domain of a tabulated f or of a
      // log-based ell; the tail checkpoints below are mandatory.
    }
  }

  const double r_N = r_at(N);
  const double r_half = r_at(N / 2);
  out.c_hat = r_N;
  out.stabilization = r_half != 0.0
                          ? std::fabs(r_N / r_half - 1.0)
                          : std::numeric_limits<double>::infinity();
  out.stabilized = out.stabilization < tol;

  std::vector<double> lx, lr;
  for (const auto& [n, r] : out.profile) {
    if (r > 0.0) {
      lx.push_back(std::log(in.sequence.term(n)));
      lr.push_back(std::log(r));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += lr[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (lr[i] - my);
    }
    out.trend_exponent = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return out;
}

ResCfeReport res_cfe_check(const GHatTable& g, double kappa_hat, double budget) {
  if (!(budget >= 0.0 && budget < 1.0))
    throw DomainError("res_cfe_check: budget must be in [0, 1)");
  ResCfeReport rep;
  const int m = static_cast<int>(g.entries.size());
  const auto usable = [&](int j) {
    return j >= 0 && j < m && g.entries[j] && g.entries[j]->convergent &&
           g.entries[j]->value > 0.0;
  };
  for (int off = -(m - 1); off <= m - 1; ++off) {
    if (off == 0) continue;
    std::vector<double> res;
    const double mult = std::exp(kappa_hat * off * g.dzeta);
    for (int j = 0; j < m; ++j) {
      if (usable(j) && usable(j + off)) {
        res.push_back(std::fabs(g.entries[j + off]->value /
                                    (mult * g.entries[j]->value) -
                                1.0));
      }
    }
    if (res.empty()) continue;
    std::sort(res.begin(), res.end());
    const auto drop = static_cast<std::size_t>(budget * static_cast<double>(res.size()));
    const double r = res[res.size() - 1 - std::min(drop, res.size() - 1)];
    rep.per_s.emplace_back(g.coord.lambda_of(off * g.dzeta), r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  std::sort(rep.per_s.begin(), rep.per_s.end());
  return rep;
}

std::vector<Segment> constancy_segments(const GHatTable& g, double kappa_hat,
                                        double jump_tol) {
  std::vector<Segment> segments;
  Segment cur;
  std::vector<double> hs;
  int prev_j = -2;
  double prev_h = 0.0;

  const auto flush = [&]() {
    if (hs.empty()) return;
    std::sort(hs.begin(), hs.end());
    cur.c = hs.size() % 2 ? hs[hs.size() / 2]
                          : 0.5 * (hs[hs.size() / 2 - 1] + hs[hs.size() / 2]);
    cur.points = static_cast<int>(hs.size());
    segments.push_back(cur);
    hs.clear();
  };

  for (int j = 0; j < static_cast<int>(g.entries.size()); ++j) {
    const auto& e = g.entries[j];
    if (!e) continue;
    if (!(e->value > 0.0))
      throw DomainError("constancy_segments: g must be positive on the grid");
    const double h = e->value * std::exp(-kappa_hat * (g.zeta0 + j * g.dzeta));
    const bool broken = j != prev_j + 1 ||
                        std::fabs(h - prev_h) > jump_tol * std::max(std::fabs(prev_h), std::fabs(h));
    if (broken && !hs.empty()) flush();
    if (hs.empty()) cur.lambda_lo = e->lambda;
    cur.lambda_hi = e->lambda;
    hs.push_back(h);
    prev_j = j;
    prev_h = h;
  }
  flush();
  return segments;
}

UctProfile uct_diagnostic(const KendallInput& in,
                          double t_lo, double t_hi, int t_points,
                          std::vector<std::uint64_t> ladder, double tol,
                          std::uint64_t ref_multiplier) {
  if (in.mode == Mode::karamata)
    throw DomainError("uct_diagnostic: applies to the Beurling/general modes");
  if (ladder.empty()) throw DomainError("uct_diagnostic: empty ladder");
  if (t_points < 2 || !(t_lo < t_hi))
    throw DomainError("uct_diagnostic: bad t window");
  std::sort(ladder.begin(), ladder.end());

  UctProfile out;
  out.n_reference = ladder.back() * ref_multiplier;

  Evaluator ev{in};
  std::vector<double> ts(t_points);
  for (int i = 0; i < t_points; ++i)
    ts[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (t_points - 1);
  std::vector<double> ref(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ref[i] = ev.value(out.n_reference, ts[i]);

  for (std::uint64_t n : ladder) {
    UctEntry e;
    e.n = n;
    e.x_n = in.sequence.term(n);
    for (std::size_t i = 0; i < ts.size(); ++i)
      e.sup_deviation = std::max(e.sup_deviation, std::fabs(ev.value(n, ts[i]) - ref[i]));
    out.entries.push_back(e);
  }
  out.uniform = true;
  for (std::size_t i = 1; i < out.entries.size(); ++i) {
    if (out.entries[i].sup_deviation > out.entries[i - 1].sup_deviation + 1e-15)
      out.uniform = false;
  }
  if (out.entries.back().sup_deviation >= tol) out.uniform = false;
  return out;
}

GeneralRv general_rv_estimate(const KendallInput& in, double rho_hat,
                              std::uint64_t N, const SeqLimOptions& opt) {
  if (in.mode != Mode::general)
    throw DomainError("general_rv_estimate: input mode must be general");
  GeneralRv out;

  GHatTable g = sequential_limits(in, rho_hat, N, opt);
  out.log_scale = g.log_scale;
  const double x = in.sequence.term(N);
  const double hx = in.h(x);

  std::vector<int> idx;
  for (int j = 0; j < static_cast<int>(g.entries.size()); ++j) {
    if (g.entries[j]) idx.push_back(j);
  }
  for (int j : idx) {
    const auto& e = *g.entries[j];
    out.t.push_back(e.lambda);
    out.k_hat.push_back(e.value);
    out.k_osc.push_back(e.tail_oscillation);
    out.r_hat.push_back(in.h(x + e.lambda * in.phi(x)) / hx);
  }

  // r(t) must itself converge (h-degeneracy check): compare against an
  // earlier point of the sequence tail.
  {
    const double x9 = in.sequence.term(std::max<std::uint64_t>(1, (N * 9) / 10));
    const double hx9 = in.h(x9);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
      const double r9 = in.h(x9 + out.t[i] * in.phi(x9)) / hx9;
      worst = std::max(worst, std::fabs(r9 - out.r_hat[i]));
    }
    if (worst > opt.osc_tol * 10.0)
      throw PipelineError(FailureClass::non_convergent,
                          "general_rv_estimate: h-ratio r(t) does not settle (h-degeneracy)");
  }

  // sigma(w) = 1 + s*w fitted through the origin from r - 1 against K.
  {
    std::vector<double> ks = out.k_hat, rs;
    for (double r : out.r_hat) rs.push_back(r - 1.0);
    out.sigma_s_hat = fit_slope_through_origin(ks, rs);
    if (std::fabs(out.sigma_s_hat) < 1e-9) out.sigma_s_hat = 0.0;
  }

  // Index fit in the (rho_hat, sigma_s_hat) table cell, linear in zeta.
  {
    std::vector<double> zs, ys;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
      zs.push_back(g.coord.zeta(out.t[i]));
      if (out.sigma_s_hat == 0.0) {
        ys.push_back(out.k_hat[i]);  // K = kappa * zeta
      } else {
        ys.push_back(std::log1p(out.sigma_s_hat * out.k_hat[i]));  // = kappa * zeta
      }
    }
    out.kappa_hat = fit_slope_through_origin(zs, ys);
  }

  for (std::size_t i = 0; i < out.t.size(); ++i) {
    const double sigma_k = 1.0 + out.sigma_s_hat * out.k_hat[i];
    out.sigma_residual = std::max(out.sigma_residual, std::fabs(sigma_k - out.r_hat[i]));
  }

  // BG expansion on exact grid pairs: zeta(u o v) = zeta(u) + zeta(v).
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const double z_sum = (g.zeta0 + idx[a] * g.dzeta) + (g.zeta0 + idx[b] * g.dzeta);
      const double pos = (z_sum - g.zeta0) / g.dzeta;
      const int jc = static_cast<int>(std::llround(pos));
      if (std::fabs(pos - jc) > 1e-9) continue;
      if (jc < 0 || jc >= static_cast<int>(g.entries.size()) || !g.entries[jc]) continue;
      // u = t[a], v = t[b]: K(u o v) vs K(v) r(u) + K(u)
      const double lhs = g.entries[jc]->value;
      const double rhs = out.k_hat[b] * out.r_hat[a] + out.k_hat[a];
      out.bg_expansion_residual =
          std::max(out.bg_expansion_residual, std::fabs(lhs - rhs));
    }
  }

  out.k_monotone = true;
  for (std::size_t i = 1; i < out.k_hat.size(); ++i) {
    if (!(out.k_hat[i] > out.k_hat[i - 1])) out.k_monotone = false;
  }
  return out;
}

namespace {

double resolve_rho(const KendallInput& in) {
  if (in.mode == Mode::karamata) return 0.0;
  const phi::PhiAnalysis pa = phi::estimate_rho(in.phi);
  if (pa.classification == phi::PhiClass::rejected)
    throw PipelineError(FailureClass::non_convergent,
                        "phi rejected by SE analysis: " + pa.note);
  double rho = pa.rho_hat;
  if (rho < 0.0) {
    if (rho < -1e-9)
      throw PipelineError(FailureClass::data, "phi analysis produced negative rho");
    rho = 0.0;
  }
  return rho;
}

// Trivial in the blanket-assumption sense: range inside {0, 1} with 0
// genuinely attained. An all-ones table is the legitimate kappa = 0 case.
bool trivial_shape(const std::vector<double>& values, double tol) {
  if (!kernels::is_trivial(values, tol)) return false;
  for (double v : values) {
    if (std::fabs(v) <= tol) return true;
  }
  return false;
}

}  // namespace

ConvergenceReport analyze(const KendallInput& in, const AnalyzeOptions& opt) {
  ConvergenceReport rep;
  rep.mode = in.mode;
  rep.rho_hat = resolve_rho(in);
  rep.n_main = opt.N;

  rep.g_hat = sequential_limits(in, rep.rho_hat, opt.N, opt.seqlim);

  const std::vector<double> gv = rep.g_hat.member_values();
  rep.triviality_flag = trivial_shape(gv, opt.trivial_tol);
  if (rep.triviality_flag)
    throw PipelineError(FailureClass::trivial_kernel,
                        "g_hat is trivial ({0,1}-valued with zeros); kernel estimation aborted");

  if (in.mode == Mode::general) {
    GeneralRv main = general_rv_estimate(in, rep.rho_hat, opt.N, opt.seqlim);
    rep.kappa_hat_raw = main.kappa_hat;
    rep.kappa_hat = main.kappa_hat;
    if (opt.bias_correction) {
      const auto n_aux = std::max<std::uint64_t>(
          64, static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(opt.N)))));
      rep.n_aux = n_aux;
      GeneralRv aux = general_rv_estimate(in, rep.rho_hat, n_aux, opt.seqlim);
      rep.kappa_hat = extrapolate_kappa(main.kappa_hat, main.log_scale,
                                        aux.kappa_hat, aux.log_scale);
    }
    rep.mult_residual = main.bg_expansion_residual;
    rep.rescfe_residual = main.sigma_residual;
    // Mirror the kernel table into the fixed K_hat schema.
    rep.k_hat.coord = rep.g_hat.coord;
    rep.k_hat.dzeta = rep.g_hat.dzeta;
    for (std::size_t i = 0; i < main.t.size(); ++i) {
      KEntry e;
      e.offset = static_cast<int>(i);
      e.s = main.t[i];
      e.value = main.k_hat[i];
      e.spread = main.k_osc[i];
      e.anchors = 1;
      rep.k_hat.entries.push_back(e);
    }
    auto [flo, fhi] = std::pair(main.t.front(), main.t.back());
    rep.feasible_s_lo = flo;
    rep.feasible_s_hi = fhi;
    rep.general = std::move(main);
    rep.corollary = verify_corollary(in, rep.kappa_hat, opt.ell, opt.N, opt.corollary_tol);
    rep.c_hat = rep.corollary.c_hat;
    if (!opt.uct_ladder.empty())
      rep.uct = uct_diagnostic(in, in.B.lo, in.B.hi, 31,
                               opt.uct_ladder, opt.seqlim.osc_tol);
    return rep;
  }

  rep.k_hat = kernel_estimate(rep.g_hat);
  IndexFit fit = fit_index(rep.k_hat);
  rep.kappa_hat_raw = fit.kappa_hat;
  rep.kappa_hat = fit.kappa_hat;
  rep.kappa_fit_residual = fit.residual;
  rep.mult_residual = fit.mult_residual;

  if (opt.bias_correction && !fit.degenerate_unit) {
    const auto n_aux = std::max<std::uint64_t>(
        64, static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(opt.N)))));
    rep.n_aux = n_aux;
    GHatTable g_aux = sequential_limits(in, rep.rho_hat, n_aux, opt.seqlim);
    IndexFit fit_aux = fit_index(kernel_estimate(g_aux));
    rep.kappa_hat = extrapolate_kappa(fit.kappa_hat, rep.g_hat.log_scale,
                                      fit_aux.kappa_hat, g_aux.log_scale);
  }

  rep.rescfe = res_cfe_check(rep.g_hat, rep.kappa_hat_raw, opt.rescfe_budget);
  rep.rescfe_residual = rep.rescfe.max_residual;
  rep.segments = constancy_segments(rep.g_hat, rep.kappa_hat_raw, opt.segment_jump_tol);
  std::tie(rep.feasible_s_lo, rep.feasible_s_hi) = rep.k_hat.feasible_window();

  rep.corollary = verify_corollary(in, rep.kappa_hat, opt.ell, opt.N, opt.corollary_tol);
  rep.c_hat = rep.corollary.c_hat;

  if (!opt.uct_ladder.empty() && in.mode != Mode::karamata)
    rep.uct = uct_diagnostic(in, in.B.lo, in.B.hi, 31,
                             opt.uct_ladder, opt.seqlim.osc_tol);
  return rep;
}

}  // namespace regvar::kendall
