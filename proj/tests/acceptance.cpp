// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every criterion runs at its stated tolerance and prints
// one [PASS]/[FAIL] line. Tolerances are pinned here, in code.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "regvar/commands.hpp"
#include "regvar/config.hpp"
#include "regvar/errors.hpp"
#include "regvar/esslim.hpp"
#include "regvar/kendall.hpp"
#include "regvar/kernels.hpp"
#include "regvar/phi_analysis.hpp"
#include "regvar/popa.hpp"
#include "regvar/rng.hpp"
#include "regvar/sequences.hpp"

using namespace regvar;

namespace {

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool cond, const char* what) {
    CHECK_MESSAGE(cond, "criterion ", number_, ": ", what);
    if (!cond) failures_.push_back(what);
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  ~Criterion() {
    const double secs = seconds();
    if (failures_.empty()) {
      std::printf("[PASS] criterion %d: %s (%.2f s)\n", number_, title_.c_str(), secs);
    } else {
      std::printf("[FAIL] criterion %d: %s (%.2f s)", number_, title_.c_str(), secs);
      for (const auto& f : failures_) std::printf(" | %s", f.c_str());
      std::printf("\n");
    }
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string title_;
  std::vector<std::string> failures_;
  std::chrono::steady_clock::time_point start_;
};

double draw_member(Rng& rng, const popa::PopaParam& p, double span) {
  const double z = rng.uniform(-span, span);
  if (p.is_infinite()) return std::exp(z);
  if (p.rho() == 0.0) return z;
  return std::expm1(z) / p.rho();
}

}  // namespace

TEST_CASE("criterion 1: popa algebra laws") {
  Criterion c(1, "Popa algebra suite: group laws and (GS) residual <= 1e-9 relative, < 1 s");
  const std::vector<popa::PopaParam> params = {
      popa::PopaParam::finite(0.0), popa::PopaParam::finite(0.5),
      popa::PopaParam::finite(1.0), popa::PopaParam::finite(2.0),
      popa::PopaParam::infinite()};
  bool laws_ok = true;
  for (const auto& p : params) {
    Rng rng(0xacce97ULL ^ (p.is_infinite() ? 9001 : static_cast<std::uint64_t>(p.rho() * 16)));
    for (int i = 0; i < 10000; ++i) {
      const double a = draw_member(rng, p, 2.0);
      const double b = draw_member(rng, p, 2.0);
      const double t = draw_member(rng, p, 1.0);
      const double ab = popa::circle(p, a, b);
      const double assoc = std::fabs(popa::circle(p, ab, t) -
                                     popa::circle(p, a, popa::circle(p, b, t)));
      laws_ok = laws_ok && assoc <= 1e-9 * (1.0 + std::fabs(popa::circle(p, ab, t)));
      laws_ok = laws_ok && std::fabs(ab - popa::circle(p, b, a)) <= 1e-9 * (1.0 + std::fabs(ab));
      laws_ok = laws_ok &&
                std::fabs(popa::circle(p, a, p.identity()) - a) <= 1e-9 * (1.0 + std::fabs(a));
      laws_ok = laws_ok && std::fabs(popa::circle(p, a, popa::inverse(p, a)) - p.identity()) <=
                               1e-9 * (1.0 + std::fabs(a));
      laws_ok = laws_ok &&
                popa::gs_residual(p, a, b) <= 1e-9 * (1.0 + std::fabs(popa::eta(p, ab)));
    }
  }
  c.expect(laws_ok, "associativity/commutativity/identity/inverse/(GS) within 1e-9 rel");
  c.expect(c.seconds() < 1.0, "runtime < 1 s");
}

TEST_CASE("criterion 2: kernel table suite") {
  Criterion c(2, "9 (r,s) cells x kappa in {-2,-0.5,0,1,3}: BG residual <= 1e-9 rel, "
                 "parameterizations agree to 1e-12, < 5 s");
  const std::vector<popa::PopaParam> axis = {
      popa::PopaParam::finite(0.0), popa::PopaParam::finite(0.5),
      popa::PopaParam::infinite()};
  bool bg_ok = true;
  bool cross_ok = true;
  Rng rng(0x2acce97ULL);
  for (const auto& r : axis) {
    for (const auto& s : axis) {
      for (double kappa : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        const kernels::KernelSpec spec{r, s, kappa};
        for (int i = 0; i < 1000; ++i) {
          const double u = draw_member(rng, r, 1.0);
          const double v = draw_member(rng, r, 1.0);
          const double kuv = kernels::kernel_eval(spec, popa::circle(r, u, v));
          bg_ok = bg_ok &&
                  kernels::bg_residual(spec, u, v) <= 1e-9 * (1.0 + std::fabs(kuv));
          const double ka = kernels::kernel_eval(spec, u);
          const double kb = kernels::kernel_eval_isomorphic(spec, u);
          cross_ok = cross_ok && std::fabs(ka - kb) <= 1e-12 * (1.0 + std::fabs(ka));
        }
      }
    }
  }
  c.expect(bg_ok, "BG residual <= 1e-9 relative in every cell");
  c.expect(cross_ok, "explicit vs isomorphism-form evaluation within 1e-12");
  c.expect(c.seconds() < 5.0, "runtime < 5 s");
}

namespace {

kendall::KendallInput criterion3_input() {
  kendall::KendallInput in;
  in.f = FunctionSpec::parse("pow_slowvar(1.7, log2)");
  in.sequence = seq::SequenceSpec::identity();
  // 10% of [1, 2] removed in 3 holes.
  in.B = kendall::TestSet{1.0, 2.0, {{1.30, 1.333}, {1.50, 1.533}, {1.70, 1.734}}};
  in.mode = kendall::Mode::karamata;
  return in;
}

}  // namespace

TEST_CASE("criterion 3: Karamata-Kendall recovery") {
  Criterion c(3, "f = x^1.7 (log x)^2, N = 1e6, B = [1,2] minus 3 holes: kappa in 1.7 +/- 0.02, "
                 "mult < 1e-2, Res-CFE < 1e-2 at budget 0.02, < 10 s");
  auto in = criterion3_input();
  kendall::AnalyzeOptions opt;
  opt.N = 1000000;
  opt.rescfe_budget = 0.02;
  const auto rep = kendall::analyze(in, opt);
  c.expect(std::fabs(rep.kappa_hat - 1.7) <= 0.02, "kappa_hat within 1.7 +/- 0.02");
  c.expect(rep.mult_residual < 1e-2, "mult_residual < 1e-2");
  c.expect(rep.rescfe_residual < 1e-2, "Res-CFE residual < 1e-2 under budget 0.02");
  c.expect(c.seconds() < 10.0, "runtime < 10 s");
}

TEST_CASE("criterion 4: corollary recovery of the normalizing constant") {
  Criterion c(4, "a_n = 3 n^-1.7/(log n)^2 supplied: c_hat within 3 +/- 2% at N = 1e6 "
                 "(closed-form oracle index and ell)");
  auto in = criterion3_input();
  in.a_policy = kendall::APolicy::given(
      FunctionSpec::parse("scaled(3, inv(pow_slowvar(1.7, log2)))"));
  const auto ell = FunctionSpec::parse("pow_slowvar(0, log2)");  // (log x)^2
  const auto cor = kendall::verify_corollary(in, 1.7, ell, 1000000, 0.02);
  c.expect(std::fabs(cor.c_hat - 3.0) <= 0.06, "c_hat within 3 +/- 2%");
  c.expect(cor.stabilized, "r_N / r_{N/2} stabilized within 2%");
}

TEST_CASE("criterion 5: Beurling recovery") {
  Criterion c(5, "phi = x, f = (1+x)^2.5: K(t) ~ (1+t)^2.5 within 1% at x = 1e6, "
                 "CJ residual < 1e-2, rho_hat = 1 +/- 1e-6");
  kendall::KendallInput in;
  in.f = FunctionSpec::parse("shifted_pow(2.5)");
  in.sequence = seq::SequenceSpec::identity(seq::AdmissibilityKind::additive);
  in.B = kendall::TestSet{0.0, 3.0, {}};
  in.mode = kendall::Mode::beurling;
  in.phi = FunctionSpec::parse("affine_phi(0, 1)");
  kendall::AnalyzeOptions opt;
  opt.N = 1000000;
  const auto rep = kendall::analyze(in, opt);

  bool k_ok = true;
  for (const auto& e : rep.k_hat.entries) {
    if (e.s < 0.0) continue;  // [0, 3] window of the criterion
    const double truth = std::pow(1.0 + e.s, 2.5);
    k_ok = k_ok && std::fabs(e.value / truth - 1.0) <= 0.01;
  }
  c.expect(k_ok, "K_hat within 1% of (1+t)^2.5 on t in [0, 3]");
  c.expect(rep.mult_residual < 1e-2, "CJ residual < 1e-2");
  c.expect(std::fabs(rep.rho_hat - 1.0) <= 1e-6, "rho_hat = 1 +/- 1e-6");
}

TEST_CASE("criterion 6: general RV recovery") {
  Criterion c(6, "f = log, phi = x, h = 1: K(t) ~ log(1+t) within 1e-3, r = 1 +/- 1e-6, "
                 "BG expansion residual < 1e-3, K strictly monotone");
  kendall::KendallInput in;
  in.f = FunctionSpec::parse("pow_slowvar(0, log)");
  in.sequence = seq::SequenceSpec::identity(seq::AdmissibilityKind::additive);
  in.B = kendall::TestSet{0.0, 3.0, {}};
  in.mode = kendall::Mode::general;
  in.phi = FunctionSpec::parse("affine_phi(0, 1)");
  in.h = FunctionSpec::parse("const(1)");
  kendall::SeqLimOptions opt;
  opt.grid_points = 25;
  const auto gr = kendall::general_rv_estimate(in, 1.0, 1000000, opt);

  bool k_ok = true, r_ok = true;
  for (std::size_t i = 0; i < gr.t.size(); ++i) {
    k_ok = k_ok && std::fabs(gr.k_hat[i] - std::log1p(gr.t[i])) <= 1e-3;
    r_ok = r_ok && std::fabs(gr.r_hat[i] - 1.0) <= 1e-6;
  }
  c.expect(k_ok, "K_hat within 1e-3 of log(1+t) on t in [0, 3]");
  c.expect(r_ok, "r_hat = 1 +/- 1e-6");
  c.expect(gr.bg_expansion_residual < 1e-3, "BG expansion residual < 1e-3");
  c.expect(gr.k_monotone, "K_hat strictly monotone on the grid");
}

TEST_CASE("criterion 7: essential-limit robustness") {
  Criterion c(7, "spiked(2 + 1/x, 0.001, 100) over 1e5 samples: converges to 2 at "
                 "delta = 0.005, fails at delta = 0; Lemma-1 closure by counting");
  const std::uint64_t seed = 7;
  const auto f = FunctionSpec::parse("spiked(const_plus_inv(2), 0.001, 100)", seed);
  const std::size_t n = 100000;
  std::vector<double> xs(n), vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 1.0 + (1e4 - 1.0) * static_cast<double>(i) / static_cast<double>(n - 1);
    vs[i] = f(xs[i]);
  }
  const auto samples = esslim::make_sampled(xs, vs, f.name());
  const std::vector<double> ladder = {0.1, 0.03, 0.01};

  const auto pass = esslim::ess_lim(samples, ladder, 0.005);
  c.expect(pass.verdict == esslim::Verdict::converges, "verdict converges at delta = 0.005");
  c.expect(pass.limit && std::fabs(*pass.limit - 2.0) <= 0.01, "limit = 2 within epsilon = 0.01");

  const auto strict = esslim::ess_lim(samples, ladder, 0.0);
  c.expect(strict.verdict != esslim::Verdict::converges, "sup-criterion (delta = 0) fails");

  // Lemma-1 closure on a constructed pair, budgets adding by counting.
  std::vector<double> gvals(n);
  for (std::size_t i = 0; i < n; ++i) gvals[i] = 1.0 + std::exp(-xs[i]);
  const auto g = esslim::make_sampled(xs, gvals, "const_plus_exp_decay(1)");
  const auto comb = esslim::ess_lim_combine_check(samples, g, ladder, 0.005);
  c.expect(comb.sum.verdict == esslim::Verdict::converges &&
               comb.sum.limit && std::fabs(*comb.sum.limit - 3.0) <= 0.01,
           "sum limit 3 under added budgets");
  c.expect(comb.sum_law_holds && comb.product_law_holds, "sum and product closure laws hold");
  c.expect(comb.union_bound_violations == 0, "union-bound counting is exact");
}

TEST_CASE("criterion 8: Croftian hitting") {
  Criterion c(8, "c_n = log n, G = U_k (k, k+0.5), I = (0,1): hit counts strictly increase "
                 "over N in {1e4, 1e5, 1e6} and exceed 100; non-admissible control has 0 hits");
  const auto seq_log = seq::SequenceSpec::log_ramp(1.0);
  const auto G = seq::OpenSetDescriptor::periodic(1.0, {{0.0, 0.5}});
  const seq::Interval I{0.0, 1.0};
  std::uint64_t prev = 0;
  bool increasing = true;
  std::uint64_t final_count = 0;
  for (std::uint64_t N : {10000ULL, 100000ULL, 1000000ULL}) {
    const auto rep = seq::croft_hit_search(seq_log, I, G, N, 101);
    if (rep.hit_count <= prev) increasing = false;
    prev = rep.hit_count;
    final_count = rep.hit_count;
  }
  c.expect(increasing, "best-probe hit counts strictly increase across the N ladder");
  c.expect(final_count > 100, "more than 100 hits at N = 1e6");

  const auto control = seq::croft_hit_search(
      seq::SequenceSpec::identity(seq::AdmissibilityKind::additive), {0.0, 0.5},
      seq::OpenSetDescriptor::periodic(1.0, {{0.6, 0.9}}), 100000, 101);
  c.expect(control.hit_count == 0, "non-admissible control (c_n = n, shifted windows) has 0 hits");
}

TEST_CASE("criterion 9: phi-dilation solver") {
  Criterion c(9, "phi in {const, x, sqrt x}: |h_q(a) - b| < 1e-6 with q of minimal "
                 "denominator among rationals within q_tol");
  const std::vector<FunctionSpec> phis = {
      FunctionSpec::parse("const(1)"), FunctionSpec::parse("affine_phi(0, 1)"),
      FunctionSpec::parse("sqrt_phi")};
  const double q_tol = 1e-8;
  Rng rng(0x9acce97ULL);
  bool residual_ok = true;
  bool minimal_ok = true;
  for (const auto& phi : phis) {
    for (int trial = 0; trial < 20; ++trial) {
      const double lambda = rng.uniform(0.0, 2.0);
      const double a = rng.uniform(0.5, 3.0);
      const double b = rng.uniform(50.0, 500.0);  // above the feasibility bound
      const auto sol = seq::phi_dilation_solve(phi, lambda, a, b, q_tol);
      residual_ok = residual_ok && sol.residual < 1e-6;
      // Brute-force minimality oracle over all smaller denominators.
      for (std::int64_t d = 1; d < sol.q.den && minimal_ok; ++d) {
        const auto p = static_cast<std::int64_t>(
            std::llround(sol.x_root * static_cast<double>(d)));
        for (std::int64_t pp = p - 1; pp <= p + 1; ++pp) {
          if (pp <= 0) continue;
          const double v = static_cast<double>(pp) / static_cast<double>(d);
          if (std::fabs(v - sol.x_root) <= q_tol) minimal_ok = false;
        }
      }
    }
  }
  c.expect(residual_ok, "|h_q(a) - b| < 1e-6 on every trial");
  c.expect(minimal_ok, "q has the minimal denominator within q_tol (continued fractions)");
}

TEST_CASE("criterion 10: mode consistency and determinism") {
  Criterion c(10, "karamata vs beurling(phi = x) kappa agreement < 1e-6; identical "
                  "config + seed give byte-identical reports");
  kendall::AnalyzeOptions opt;
  opt.N = 100000;

  kendall::KendallInput kara;
  kara.f = FunctionSpec::parse("pow_slowvar(1.7, log2)");
  kara.sequence = seq::SequenceSpec::identity();
  kara.B = kendall::TestSet{1.0, 2.0, {}};
  kara.mode = kendall::Mode::karamata;
  const auto rk = kendall::analyze(kara, opt);

  kendall::KendallInput beu = kara;
  beu.mode = kendall::Mode::beurling;
  beu.phi = FunctionSpec::parse("affine_phi(0, 1)");
  beu.sequence = seq::SequenceSpec::identity(seq::AdmissibilityKind::additive);
  beu.B = kendall::TestSet{0.0, 1.0, {}};
  const auto rb = kendall::analyze(beu, opt);
  c.expect(std::fabs(rk.kappa_hat - rb.kappa_hat) < 1e-6,
           "kappa agreement across modes < 1e-6");

  const auto cfg = Config::parse_text(
      "f = spiked(pow_slowvar(1.7, log2), 0.0005, 50)\n"
      "n = 50000\nlambda_points = 17\n");
  const auto run1 = cli::cmd_analyze(cfg, {99, "json"});
  const auto run2 = cli::cmd_analyze(cfg, {99, "json"});
  c.expect(run1.exit_code == 0, "pipeline runs clean on the spiked input");
  c.expect(run1.report == run2.report, "byte-identical reports for identical config + seed");
}
