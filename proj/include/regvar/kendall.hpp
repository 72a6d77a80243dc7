// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Sequential regular-variation pipelines: Karamata / Beurling / general-mode
// kernel recovery from a_n f(. x_n)-type limits on a test set B, index
// fitting, restricted-Cauchy residuals, constancy segments, uniform
// convergence diagnostics, and the relative-variation corollary check.

#ifndef REGVAR_KENDALL_HPP
#define REGVAR_KENDALL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regvar/functions.hpp"
#include "regvar/popa.hpp"
#include "regvar/sequences.hpp"

namespace regvar::kendall {

using popa::PopaParam;

enum class Mode { karamata, beurling, general };
std::string mode_name(Mode m);

/// Canonical group coordinate zeta = log W_r: lambda grids are uniform in
/// zeta, so group composition is exact index addition (no interpolation).
/// zeta(lambda) = lambda (r = 0), log(1 + r*lambda) (finite r), log lambda
/// (r = inf, the Karamata/multiplicative case).
struct GroupCoord {
  PopaParam r = PopaParam::infinite();
  double zeta(double lambda) const;
  double lambda_of(double zeta) const;
};

/// Base interval minus disjoint removed subintervals: the desk-scale stand-in
/// for a non-meagre Baire test set.
struct TestSet {
  double lo = 1.0;
  double hi = 2.0;
  std::vector<std::pair<double, double>> holes;

  void validate() const;
  bool contains(double x) const;
  double total_length() const;
};

/// Normalizer policy: a_n = 1/f(x_n) (reciprocal; a_n = 1 in general mode,
/// where h already normalizes) or an explicit a_n = a_of_n(n).
struct APolicy {
  bool reciprocal = true;
  FunctionSpec a_of_n;
  static APolicy make_reciprocal() { return APolicy{}; }
  static APolicy given(FunctionSpec a);
};

struct KendallInput {
  FunctionSpec f;
  seq::SequenceSpec sequence;
  TestSet B;
  APolicy a_policy;
  Mode mode = Mode::karamata;
  FunctionSpec phi;  // beurling / general
  FunctionSpec h;    // general
};

struct GEntry {
  double lambda = 0.0;
  double value = 0.0;             // estimate at n = N
  double tail_oscillation = 0.0;  // max deviation over the last-decile subsample
  bool convergent = false;
};

struct GHatTable {
  GroupCoord coord;
  double zeta0 = 0.0;
  double dzeta = 0.0;
  std::vector<std::optional<GEntry>> entries;  // index-aligned; nullopt = outside B
  std::uint64_t n_used = 0;
  double x_n = 0.0;       // sequence value at n_used
  double log_scale = 0.0; // log x_n, the extrapolation scale

  double lambda_at(int j) const { return coord.lambda_of(zeta0 + j * dzeta); }
  std::vector<double> member_values() const;
};

struct SeqLimOptions {
  int grid_points = 25;
  double osc_tol = 1e-2;
  int osc_samples = 256;
};

/// Per-lambda sequential limits a_n f(lambda x_n) (Karamata),
/// a_n f(x_n o_phi t) (Beurling) or a_n [f(x_n o_phi t) - f(x_n)]/h(x_n)
/// (general) at n = N, with tail oscillation over a deterministic subsample
/// of the last decile of indices. rho_hat parametrizes the grid's group
/// coordinate (ignored for Karamata).
GHatTable sequential_limits(const KendallInput& in, double rho_hat,
                            std::uint64_t N, const SeqLimOptions& opt);

struct KEntry {
  int offset = 0;      // index shift k; s has zeta(s) = k * dzeta
  double s = 0.0;
  double value = 0.0;  // median over anchors of g(composed)/g(anchor)
  double spread = 0.0; // max/min anchor ratio - 1
  int anchors = 0;
};

struct KHatTable {
  GroupCoord coord;
  double dzeta = 0.0;
  std::vector<KEntry> entries;        // ascending offsets, only feasible ones
  const KEntry* at_offset(int k) const;

  /// Entry for a requested s; throws PipelineError(empty_anchors) with the
  /// feasible window when s has no anchors.
  const KEntry& at_s(double s) const;
  std::pair<double, double> feasible_window() const;  // [s_lo, s_hi]
};

/// Kernel estimates K(s) = median over the anchor set C(s) = {lambda in
/// grid : lambda and the composed point both in B} of g(composed)/g(anchor).
/// Only convergent g entries anchor. Throws PipelineError(empty_anchors) if
/// no offset other than 0 is feasible.
KHatTable kernel_estimate(const GHatTable& g);

struct IndexFit {
  double kappa_hat = 0.0;
  double residual = 0.0;       // max |log K - (kappa*zeta + b)| over entries
  double mult_residual = 0.0;  // max |K(s o t) - K(s)K(t)| over feasible pairs
  bool degenerate_unit = false;
};

/// Least-squares slope of log K(s) against zeta(s) (log s in Karamata mode,
/// log(1 + rho*s) in Beurling mode); K == 1 throughout gives kappa = 0 with
/// zero residual. Multiplicativity defect is reported alongside.
IndexFit fit_index(const KHatTable& k);

/// Two-point Richardson extrapolation in 1/log x_N: removes the leading
/// slowly-varying bias of finite-scale slopes; exact no-op for pure powers.
double extrapolate_kappa(double kappa_main, double log_scale_main,
                         double kappa_aux, double log_scale_aux);

struct CorollaryProfile {
  std::vector<std::pair<std::uint64_t, double>> profile;  // (n, r_n) checkpoints
  double c_hat = 0.0;
  double stabilization = 0.0;  // |r_N / r_{N/2} - 1|
  bool stabilized = false;
  double trend_exponent = 0.0; // LS slope of log r_n vs log x_n
};

/// Profile r_n = a_n x_n^kappa ell(x_n). With ell empty, the self-consistent
/// ell(x) = f(x)/x^kappa is used. c_hat is r_N; the verdict needs
/// |r_N/r_{N/2} - 1| < tol.
CorollaryProfile verify_corollary(const KendallInput& in, double kappa_hat,
                                  const FunctionSpec& ell, std::uint64_t N,
                                  double tol);

struct ResCfeReport {
  double max_residual = 0.0;
  std::vector<std::pair<double, double>> per_s;  // (s, budget-trimmed residual)
};

/// Restricted-CFE residuals: per feasible s, |g(composed)/(m_kappa(s) g(lambda)) - 1|
/// over anchors with a `budget` fraction of exceptional anchors discarded;
/// m_kappa(s) = exp(kappa * zeta(s)) is s^kappa in Karamata mode.
ResCfeReport res_cfe_check(const GHatTable& g, double kappa_hat, double budget);

struct Segment {
  double lambda_lo = 0.0, lambda_hi = 0.0;
  double c = 0.0;   // segment constant, median of g(lambda) e^{-kappa zeta}
  int points = 0;
};

/// Splits the grid where h(lambda) = g(lambda) e^{-kappa zeta(lambda)} jumps
/// by more than jump_tol (relative) or where B has a hole; a connected B with
/// power-law g yields a single segment.
std::vector<Segment> constancy_segments(const GHatTable& g, double kappa_hat,
                                        double jump_tol);

struct UctEntry {
  std::uint64_t n = 0;
  double x_n = 0.0;
  double sup_deviation = 0.0;
};

struct UctProfile {
  std::vector<UctEntry> entries;
  bool uniform = false;
  std::uint64_t n_reference = 0;
};

/// Sup over a compact t window of |a_n f(x_n o_phi t) - g_ref(t)| along an
/// N ladder, against the reference estimate at ref_multiplier * max(ladder).
/// Uniform-convergence verdict: sups non-increasing and final < tol.
UctProfile uct_diagnostic(const KendallInput& in,
                          double t_lo, double t_hi, int t_points,
                          std::vector<std::uint64_t> ladder, double tol,
                          std::uint64_t ref_multiplier = 100);

struct GeneralRv {
  std::vector<double> t;
  std::vector<double> k_hat;   // difference quotients [f(x o t) - f(x)]/h(x)
  std::vector<double> r_hat;   // h(x o t)/h(x)
  std::vector<double> k_osc;   // tail oscillation per t
  double sigma_s_hat = 0.0;    // sigma(w) = 1 + s*w fitted from r against K
  double kappa_hat = 0.0;      // index in the (rho_hat, sigma_s_hat) table cell
  double bg_expansion_residual = 0.0;  // max |K(u o v) - (K(v) r(u) + K(u))|
  double sigma_residual = 0.0;         // max |sigma(K(u)) - r(u)|
  bool k_monotone = false;
  double log_scale = 0.0;
};

/// Differenced-kernel estimation: the kernel and the h-multiplier along the
/// sequence, sigma-parameter fit, BG expansion residual on exact grid pairs,
/// and the monotonicity check.
GeneralRv general_rv_estimate(const KendallInput& in, double rho_hat,
                              std::uint64_t N, const SeqLimOptions& opt);

struct AnalyzeOptions {
  SeqLimOptions seqlim;
  std::uint64_t N = 1000000;
  bool bias_correction = true;
  double rescfe_budget = 0.02;
  double segment_jump_tol = 0.05;
  double corollary_tol = 0.05;
  double trivial_tol = 1e-3;
  std::vector<std::uint64_t> uct_ladder;  // empty = skip the UCT diagnostic
  FunctionSpec ell;                       // oracle ell; empty = self-consistent
};

struct ConvergenceReport {
  Mode mode = Mode::karamata;
  double rho_hat = 0.0;
  GHatTable g_hat;
  KHatTable k_hat;
  double kappa_hat = 0.0;
  double kappa_hat_raw = 0.0;
  double kappa_fit_residual = 0.0;
  double c_hat = 0.0;
  double mult_residual = 0.0;
  double rescfe_residual = 0.0;
  bool triviality_flag = false;
  ResCfeReport rescfe;
  std::vector<Segment> segments;
  CorollaryProfile corollary;
  UctProfile uct;
  std::optional<GeneralRv> general;
  double feasible_s_lo = 0.0, feasible_s_hi = 0.0;
  std::uint64_t n_main = 0, n_aux = 0;
};

/// The full pipeline: rho from phi (Beurling/general), sequential limits at
/// N and sqrt(N), triviality guard, kernel estimation, index fit with
/// bias-corrected kappa_hat (raw slope kept alongside), Res-CFE, constancy
/// segments, and the corollary profile. Throws PipelineError with a distinct
/// FailureClass for each documented failure mode.
ConvergenceReport analyze(const KendallInput& in, const AnalyzeOptions& opt);

}  // namespace regvar::kendall

#endif  // REGVAR_KENDALL_HPP
