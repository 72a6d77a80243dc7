// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/commands.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "regvar/errors.hpp"
#include "regvar/esslim.hpp"
#include "regvar/functions.hpp"
#include "regvar/kendall.hpp"
#include "regvar/kernels.hpp"
#include "regvar/phi_analysis.hpp"
#include "regvar/report.hpp"
#include "regvar/rng.hpp"
#include "regvar/sequences.hpp"

namespace regvar::cli {

namespace {

constexpr const char* kReportVersion = "regvar-report/1";

Json config_echo(const Config& cfg) {
  Json obj = Json::object();
  for (const auto& [k, v] : cfg.entries()) obj.put(k, v);
  return obj;
}

Json envelope(const std::string& command, const Config& cfg, const CommonOptions& opt) {
  Json env = Json::object();
  env.put("version", kReportVersion);
  env.put("command", command);
  env.put("seed", opt.seed);
  env.put("config", config_echo(cfg));
  return env;
}

/// JSON is the canonical schema; text mode gets a terse deterministic
/// summary assembled from the same values.
CommandResult ok(Json env, const CommonOptions& opt, const std::string& summary = "") {
  if (opt.format == "text" && !summary.empty()) return CommandResult{summary, 0};
  return CommandResult{env.dump(true), 0};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

popa::PopaParam parse_popa(const std::string& tok) {
  if (tok == "inf" || tok == "infinity") return popa::PopaParam::infinite();
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return popa::PopaParam::finite(v);
  } catch (const std::exception&) {
    throw ConfigError("bad Popa parameter '" + tok + "' (number or 'inf')");
  }
}

std::vector<popa::PopaParam> parse_popa_list(const Config& cfg, const std::string& key,
                                             const std::string& fallback) {
  const std::string s = cfg.get_string(key, fallback);
  std::vector<popa::PopaParam> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError(key + ": empty list item");
    out.push_back(parse_popa(tok.substr(b, e - b + 1)));
  }
  return out;
}

// ---------------------------------------------------------------- analyze

kendall::KendallInput build_kendall_input(const Config& cfg, const CommonOptions& opt) {
  kendall::KendallInput in;
  const std::string mode = cfg.get_string("mode", "karamata");
  if (mode == "karamata") in.mode = kendall::Mode::karamata;
  else if (mode == "beurling") in.mode = kendall::Mode::beurling;
  else if (mode == "general") in.mode = kendall::Mode::general;
  else throw ConfigError("mode must be karamata|beurling|general, got '" + mode + "'");

  if (cfg.has("csv")) {
    in.f = FunctionSpec::tabulated("csv:" + cfg.get_string("csv"),
                                   read_xy_csv(cfg.get_string("csv")));
  } else {
    in.f = FunctionSpec::parse(cfg.get_string("f"), opt.seed);
  }

  const auto kind = in.mode == kendall::Mode::karamata
                        ? seq::AdmissibilityKind::multiplicative
                        : seq::AdmissibilityKind::additive;
  in.sequence = seq::SequenceSpec::parse(cfg.get_string("sequence", "identity"), kind);

  in.B.lo = cfg.get_double("b_lo", 1.0);
  in.B.hi = cfg.get_double("b_hi", 2.0);
  in.B.holes = cfg.get_pair_list("b_holes");
  in.B.validate();

  if (cfg.has("a")) {
    in.a_policy = kendall::APolicy::given(FunctionSpec::parse(cfg.get_string("a"), opt.seed));
  }
  if (in.mode != kendall::Mode::karamata)
    in.phi = FunctionSpec::parse(cfg.get_string("phi"), opt.seed);
  if (in.mode == kendall::Mode::general)
    in.h = FunctionSpec::parse(cfg.get_string("h", "const(1)"), opt.seed);
  return in;
}

kendall::AnalyzeOptions build_analyze_options(const Config& cfg) {
  kendall::AnalyzeOptions o;
  o.N = cfg.get_u64("n", 1000000);
  o.seqlim.grid_points = static_cast<int>(cfg.get_u64("lambda_points", 25));
  o.seqlim.osc_tol = cfg.get_double("osc_tol", 1e-2);
  o.seqlim.osc_samples = static_cast<int>(cfg.get_u64("osc_samples", 256));
  o.bias_correction = cfg.get_bool("bias_correction", true);
  o.rescfe_budget = cfg.get_double("rescfe_budget", 0.02);
  o.segment_jump_tol = cfg.get_double("segment_jump_tol", 0.05);
  o.corollary_tol = cfg.get_double("corollary_tol", 0.05);
  o.trivial_tol = cfg.get_double("trivial_tol", 1e-3);
  for (const auto& [key, value] : {std::pair<const char*, double>{"osc_tol", o.seqlim.osc_tol},
                                   {"segment_jump_tol", o.segment_jump_tol},
                                   {"corollary_tol", o.corollary_tol},
                                   {"trivial_tol", o.trivial_tol}}) {
    if (!(value > 0.0))
      throw ConfigError(std::string("analyze: tolerance '") + key + "' must be > 0");
  }
  if (cfg.has("uct_ladder")) {
    for (double v : cfg.get_double_list("uct_ladder"))
      o.uct_ladder.push_back(static_cast<std::uint64_t>(v));
  }
  if (cfg.has("ell")) o.ell = FunctionSpec::parse(cfg.get_string("ell"), 0);
  return o;
}

Json g_hat_json(const kendall::GHatTable& g) {
  Json arr = Json::array();
  for (const auto& e : g.entries) {
    if (!e) continue;
    Json row = Json::object();
    row.put("lambda", e->lambda);
    row.put("value", e->value);
    row.put("tail_oscillation", e->tail_oscillation);
    row.put("convergent", e->convergent);
    arr.push(std::move(row));
  }
  return arr;
}

Json k_hat_json(const kendall::KHatTable& k) {
  Json arr = Json::array();
  for (const auto& e : k.entries) {
    Json row = Json::object();
    row.put("s", e.s);
    row.put("value", e.value);
    row.put("spread", e.spread);
    row.put("anchors", e.anchors);
    arr.push(std::move(row));
  }
  return arr;
}

Json report_json(const kendall::ConvergenceReport& rep) {
  Json out = Json::object();
  out.put("mode", kendall::mode_name(rep.mode));
  if (rep.mode != kendall::Mode::karamata) out.put("rho_hat", rep.rho_hat);
  out.put("g_hat", g_hat_json(rep.g_hat));
  out.put("K_hat", k_hat_json(rep.k_hat));
  out.put("kappa_hat", rep.kappa_hat);
  out.put("kappa_hat_raw", rep.kappa_hat_raw);
  out.put("kappa_fit_residual", rep.kappa_fit_residual);
  out.put("c_hat", rep.c_hat);
  out.put("mult_residual", rep.mult_residual);
  out.put("rescfe_residual", rep.rescfe_residual);
  out.put("triviality_flag", rep.triviality_flag);

  Json fw = Json::object();
  fw.put("s_lo", rep.feasible_s_lo);
  fw.put("s_hi", rep.feasible_s_hi);
  out.put("feasible_window", std::move(fw));

  Json segs = Json::array();
  for (const auto& s : rep.segments) {
    Json row = Json::object();
    row.put("lambda_lo", s.lambda_lo);
    row.put("lambda_hi", s.lambda_hi);
    row.put("c", s.c);
    row.put("points", s.points);
    segs.push(std::move(row));
  }
  out.put("constancy_segments", std::move(segs));

  Json cor = Json::object();
  cor.put("c_hat", rep.corollary.c_hat);
  cor.put("stabilization", rep.corollary.stabilization);
  cor.put("stabilized", rep.corollary.stabilized);
  cor.put("trend_exponent", rep.corollary.trend_exponent);
  Json prof = Json::array();
  for (const auto& [n, r] : rep.corollary.profile) {
    Json row = Json::object();
    row.put("n", n);
    row.put("r", r);
    prof.push(std::move(row));
  }
  cor.put("profile", std::move(prof));
  out.put("corollary", std::move(cor));

  Json uni = Json::array();
  for (const auto& e : rep.uct.entries) {
    Json row = Json::object();
    row.put("n", e.n);
    row.put("x_n", e.x_n);
    row.put("sup_deviation", e.sup_deviation);
    uni.push(std::move(row));
  }
  out.put("uniformity_profile", std::move(uni));
  if (!rep.uct.entries.empty()) out.put("uniform_convergence", rep.uct.uniform);

  if (rep.general) {
    const auto& gr = *rep.general;
    Json gj = Json::object();
    gj.put("sigma_s_hat", gr.sigma_s_hat);
    gj.put("kappa_hat", gr.kappa_hat);
    gj.put("bg_expansion_residual", gr.bg_expansion_residual);
    gj.put("sigma_residual", gr.sigma_residual);
    gj.put("k_monotone", gr.k_monotone);
    Json kt = Json::array();
    for (std::size_t i = 0; i < gr.t.size(); ++i) {
      Json row = Json::object();
      row.put("t", gr.t[i]);
      row.put("K", gr.k_hat[i]);
      row.put("r", gr.r_hat[i]);
      kt.push(std::move(row));
    }
    gj.put("table", std::move(kt));
    out.put("general_rv", std::move(gj));
  }

  Json acct = Json::object();
  acct.put("n_main", rep.n_main);
  acct.put("n_aux", rep.n_aux);
  acct.put("lambda_points", static_cast<int>(rep.g_hat.entries.size()));
  out.put("accounting", std::move(acct));
  return out;
}

const std::set<std::string> kAnalyzeKeys = {
    "f", "csv", "sequence", "mode", "phi", "h", "a", "b_lo", "b_hi", "b_holes",
    "n", "lambda_points", "osc_tol", "osc_samples", "bias_correction",
    "rescfe_budget", "segment_jump_tol", "corollary_tol", "trivial_tol",
    "uct_ladder", "ell", "corollary_kappa", "seed"};

CommandResult analyze_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kAnalyzeKeys);
  const kendall::KendallInput in = build_kendall_input(cfg, opt);
  const kendall::AnalyzeOptions aopt = build_analyze_options(cfg);
  kendall::ConvergenceReport rep = kendall::analyze(in, aopt);

  if (cfg.has("corollary_kappa")) {
    // Corollary re-run against an externally supplied index (oracle mode).
    rep.corollary = kendall::verify_corollary(in, cfg.get_double("corollary_kappa"),
                                              aopt.ell, aopt.N, aopt.corollary_tol);
    rep.c_hat = rep.corollary.c_hat;
  }

  Json env = envelope("analyze", cfg, opt);
  env.put("report", report_json(rep));

  std::ostringstream text;
  text << "analyze: mode=" << kendall::mode_name(rep.mode);
  if (rep.mode != kendall::Mode::karamata)
    text << " rho_hat=" << fmt("%.9g", rep.rho_hat);
  text << " kappa_hat=" << fmt("%.9g", rep.kappa_hat)
       << " (raw " << fmt("%.9g", rep.kappa_hat_raw) << ")"
       << " c_hat=" << fmt("%.9g", rep.c_hat)
       << "\n  mult_residual=" << fmt("%.3g", rep.mult_residual)
       << " rescfe_residual=" << fmt("%.3g", rep.rescfe_residual)
       << " segments=" << rep.segments.size()
       << " feasible_s=[" << fmt("%.6g", rep.feasible_s_lo) << ", "
       << fmt("%.6g", rep.feasible_s_hi) << "]\n";
  return ok(std::move(env), opt, text.str());
}

// -------------------------------------------------------------- verify-fe

const std::set<std::string> kVerifyFeKeys = {"r_values", "s_values", "kappas",
                                             "trials", "zeta_span", "broken_demo",
                                             "seed"};

CommandResult verify_fe_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kVerifyFeKeys);
  const auto rs = parse_popa_list(cfg, "r_values", "0, 0.5, 1, inf");
  const auto ss = parse_popa_list(cfg, "s_values", "0, 0.5, 1, inf");
  const auto kappas = cfg.get_double_list("kappas", {-2.0, -0.5, 0.0, 1.0, 3.0});
  const auto trials = cfg.get_u64("trials", 1000);
  const double span = cfg.get_double("zeta_span", 1.0);

  Rng rng(opt.seed);
  Json cells = Json::array();
  double worst = 0.0;
  double worst_cross = 0.0;
  for (const auto& r : rs) {
    for (const auto& s : ss) {
      for (double kappa : kappas) {
        const kernels::KernelSpec spec{r, s, kappa};
        double cell_worst = 0.0;
        double cross_worst = 0.0;
        for (std::uint64_t i = 0; i < trials; ++i) {
          // Draw group points through the canonical coordinate so that both
          // arguments and their composition stay in a bounded window.
          const double zu = rng.uniform(-span, span);
          const double zv = rng.uniform(-span, span);
          kendall::GroupCoord coord{r};
          const double u = coord.lambda_of(zu);
          const double v = coord.lambda_of(zv);
          const double kv = kernels::kernel_eval(spec, popa::circle(r, u, v));
          const double rel = kernels::bg_residual(spec, u, v) / (1.0 + std::fabs(kv));
          cell_worst = std::max(cell_worst, rel);
          for (double t : {u, v}) {
            const double a = kernels::kernel_eval(spec, t);
            const double b = kernels::kernel_eval_isomorphic(spec, t);
            cross_worst = std::max(cross_worst, std::fabs(a - b) / (1.0 + std::fabs(a)));
          }
        }
        Json row = Json::object();
        row.put("r", r.to_string());
        row.put("s", s.to_string());
        row.put("kappa", kappa);
        row.put("equation", kernels::equation_class_name(kernels::classify(r, s)));
        row.put("formula", kernels::kernel_formula_text(r, s));
        row.put("max_bg_residual_rel", cell_worst);
        row.put("max_cross_param_rel", cross_worst);
        cells.push(std::move(row));
        worst = std::max(worst, cell_worst);
        worst_cross = std::max(worst_cross, cross_worst);
      }
    }
  }

  Json env = envelope("verify-fe", cfg, opt);
  Json rep = Json::object();
  rep.put("cells", std::move(cells));
  rep.put("max_bg_residual_rel", worst);
  rep.put("max_cross_param_rel", worst_cross);

  if (cfg.get_bool("broken_demo", false)) {
    // Deliberate non-solution K(t) = t against (r, s) = (0, inf):
    // |(u+v) - uv| is visibly nonzero.
    const auto broken = [](double t) { return t; };
    const double res = kernels::bg_residual_fn(
        broken, popa::PopaParam::finite(0.0), popa::PopaParam::infinite(), 1.0, 1.0);
    rep.put("broken_kernel_residual_at_1_1", res);
  }
  Json acct = Json::object();
  acct.put("trials_per_cell", trials);
  acct.put("cells", static_cast<int>(rs.size() * ss.size() * kappas.size()));
  rep.put("accounting", std::move(acct));
  env.put("report", std::move(rep));

  std::ostringstream text;
  text << "verify-fe: " << rs.size() * ss.size() * kappas.size() << " cells x " << trials
       << " trials: max BG residual " << fmt("%.3g", worst)
       << " (rel), cross-parameterization " << fmt("%.3g", worst_cross) << "\n";
  return ok(std::move(env), opt, text.str());
}

// ----------------------------------------------------------------- esslim

const std::set<std::string> kEsslimKeys = {"f", "csv", "combine_g", "x_lo", "x_hi",
                                           "samples", "grid", "epsilons", "delta",
                                           "seed"};

esslim::SampledFunction materialize(const FunctionSpec& f, double x_lo, double x_hi,
                                    std::size_t samples, const std::string& grid) {
  if (samples < 2) throw ConfigError("esslim: samples must be >= 2");
  if (!(x_lo < x_hi)) throw ConfigError("esslim: need x_lo < x_hi");
  if (grid != "uniform" && grid != "geometric")
    throw ConfigError("esslim: grid must be uniform|geometric");
  if (grid == "geometric" && !(x_lo > 0.0))
    throw ConfigError("esslim: geometric grid needs x_lo > 0");
  std::vector<double> xs(samples), vs(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(samples - 1);
    xs[i] = grid == "geometric" ? x_lo * std::pow(x_hi / x_lo, frac)
                                : x_lo + (x_hi - x_lo) * frac;
    vs[i] = f(xs[i]);
  }
  return esslim::make_sampled(std::move(xs), std::move(vs), f.name());
}

Json esslim_json(const esslim::EssLimResult& r) {
  Json out = Json::object();
  if (r.limit) out.put("limit", *r.limit);
  out.put("verdict", esslim::verdict_name(r.verdict));
  out.put("min_tail", static_cast<std::uint64_t>(r.min_tail));
  Json prof = Json::array();
  for (const auto& e : r.epsilon_profile) {
    Json row = Json::object();
    row.put("epsilon", e.epsilon);
    row.put("x_threshold", e.x_threshold);
    row.put("exceptional_fraction", e.exceptional_fraction);
    row.put("certified", e.certified);
    row.put("short_window", e.short_window);
    prof.push(std::move(row));
  }
  out.put("epsilon_profile", std::move(prof));
  return out;
}

CommandResult esslim_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kEsslimKeys);
  const auto epsilons = cfg.get_double_list("epsilons", {0.1, 0.03, 0.01});
  const double delta = cfg.get_double("delta", 0.005);

  esslim::SampledFunction samples;
  if (cfg.has("csv")) {
    auto rows = read_xy_csv(cfg.get_string("csv"));
    std::vector<double> xs, vs;
    for (auto& [x, v] : rows) {
      xs.push_back(x);
      vs.push_back(v);
    }
    samples = esslim::make_sampled(std::move(xs), std::move(vs),
                                   "csv:" + cfg.get_string("csv"));
  } else {
    const FunctionSpec f = FunctionSpec::parse(cfg.get_string("f"), opt.seed);
    samples = materialize(f, cfg.get_double("x_lo", 1.0), cfg.get_double("x_hi", 1e4),
                          cfg.get_u64("samples", 100000), cfg.get_string("grid", "uniform"));
  }

  const auto res = esslim::ess_lim(samples, epsilons, delta);
  Json env = envelope("esslim", cfg, opt);
  Json rep = Json::object();
  rep.put("input", samples.metadata);
  rep.put("ess_lim", esslim_json(res));

  if (cfg.has("combine_g")) {
    const FunctionSpec g = FunctionSpec::parse(cfg.get_string("combine_g"), opt.seed);
    std::vector<double> gv(samples.x.size());
    for (std::size_t i = 0; i < samples.x.size(); ++i) gv[i] = g(samples.x[i]);
    const auto gs = esslim::make_sampled(samples.x, std::move(gv), g.name());
    const auto comb = esslim::ess_lim_combine_check(samples, gs, epsilons, delta);
    Json cj = Json::object();
    cj.put("g", esslim_json(comb.g));
    cj.put("sum", esslim_json(comb.sum));
    cj.put("product", esslim_json(comb.product));
    cj.put("sum_law_holds", comb.sum_law_holds);
    cj.put("product_law_holds", comb.product_law_holds);
    cj.put("union_bound_violations", static_cast<std::uint64_t>(comb.union_bound_violations));
    rep.put("combine", std::move(cj));
  }

  Json acct = Json::object();
  acct.put("samples", static_cast<std::uint64_t>(samples.x.size()));
  rep.put("accounting", std::move(acct));
  env.put("report", std::move(rep));

  std::ostringstream text;
  text << "esslim: verdict=" << esslim::verdict_name(res.verdict);
  if (res.limit) text << " limit=" << fmt("%.9g", *res.limit);
  for (const auto& e : res.epsilon_profile) {
    text << "\n  eps=" << fmt("%.3g", e.epsilon)
         << (e.certified ? " certified, X=" : " NOT certified, X=")
         << fmt("%.6g", e.x_threshold)
         << " exceptional_fraction=" << fmt("%.3g", e.exceptional_fraction);
  }
  text << "\n";
  return ok(std::move(env), opt, text.str());
}

// -------------------------------------------------------------- sequences

const std::set<std::string> kSequencesKeys = {
    "seq", "kind", "check_n0", "check_tol", "check_length",
    "croft_period", "croft_cells", "croft_windows", "croft_i_lo", "croft_i_hi",
    "croft_probes", "croft_checkpoints",
    "dilation_phi", "dilation_lambda", "dilation_a", "dilation_b", "dilation_qtol",
    "seed"};

CommandResult sequences_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kSequencesKeys);
  const std::string kind_s = cfg.get_string("kind", "additive");
  if (kind_s != "additive" && kind_s != "multiplicative")
    throw ConfigError("kind must be additive|multiplicative");
  const auto kind = kind_s == "additive" ? seq::AdmissibilityKind::additive
                                         : seq::AdmissibilityKind::multiplicative;
  const auto spec = seq::SequenceSpec::parse(cfg.get_string("seq", "log_ramp(1)"), kind);

  Json env = envelope("sequences", cfg, opt);
  Json rep = Json::object();
  rep.put("sequence", spec.name());
  rep.put("kind", kind_s);
  std::ostringstream text_extra;

  {
    const auto n0 = cfg.get_u64("check_n0", 100);
    const auto len = cfg.get_u64("check_length", 10000);
    const double tol = cfg.get_double("check_tol", 0.02);
    const auto prefix = spec.prefix(len);
    const auto adm = seq::admissibility_report(prefix, kind, n0, tol);
    Json aj = Json::object();
    aj.put("passes", adm.passes);
    aj.put("worst_gap", adm.worst_gap);
    aj.put("worst_index", static_cast<std::uint64_t>(adm.worst_index));
    aj.put("divergence_witness", adm.divergence_witness);
    aj.put("verdict", adm.verdict_text);
    rep.put("admissibility", std::move(aj));
    text_extra << "  admissibility: " << adm.verdict_text << " (worst gap "
               << fmt("%.3g", adm.worst_gap) << ")\n";
  }

  if (cfg.has("croft_cells") || cfg.has("croft_windows")) {
    seq::OpenSetDescriptor G;
    G.period = cfg.get_double("croft_period", 0.0);
    for (auto [a, b] : cfg.get_pair_list("croft_cells")) G.cells.push_back({a, b});
    for (auto [a, b] : cfg.get_pair_list("croft_windows")) G.windows.push_back({a, b});
    const seq::Interval I{cfg.get_double("croft_i_lo", 0.0), cfg.get_double("croft_i_hi", 1.0)};
    const auto probes = cfg.get_u64("croft_probes", 101);
    std::vector<double> checkpoints = cfg.get_double_list("croft_checkpoints", {1e4, 1e5});
    Json arr = Json::array();
    std::uint64_t prev = 0;
    bool first = true;
    bool strictly_increasing = true;
    for (double nd : checkpoints) {
      const auto N = static_cast<std::uint64_t>(nd);
      const auto hit = seq::croft_hit_search(spec, I, G, N, probes);
      Json row = Json::object();
      row.put("N", N);
      row.put("best_probe", hit.probe);
      row.put("hit_count", hit.hit_count);
      Json gaps = Json::object();
      gaps.put("count", hit.gap_stats.count);
      gaps.put("min", hit.gap_stats.min_gap);
      gaps.put("max", hit.gap_stats.max_gap);
      gaps.put("mean", hit.gap_stats.mean_gap);
      row.put("gap_stats", std::move(gaps));
      arr.push(std::move(row));
      if (!first && hit.hit_count <= prev) strictly_increasing = false;
      prev = hit.hit_count;
      first = false;
      text_extra << "  croft N=" << N << ": best probe " << fmt("%.6g", hit.probe)
                 << ", " << hit.hit_count << " hits\n";
    }
    Json cj = Json::object();
    cj.put("checkpoints", std::move(arr));
    cj.put("hit_counts_strictly_increasing", strictly_increasing);
    rep.put("croft", std::move(cj));
    text_extra << "  hit counts strictly increasing: "
               << (strictly_increasing ? "yes" : "no") << "\n";
  }

  if (cfg.has("dilation_phi")) {
    const FunctionSpec phi = FunctionSpec::parse(cfg.get_string("dilation_phi"), opt.seed);
    const auto sol = seq::phi_dilation_solve(
        phi, cfg.get_double("dilation_lambda", 0.0), cfg.get_double("dilation_a"),
        cfg.get_double("dilation_b"), cfg.get_double("dilation_qtol", 1e-9));
    Json dj = Json::object();
    dj.put("q", sol.q.to_string());
    dj.put("q_value", sol.q.value());
    dj.put("x_root", sol.x_root);
    dj.put("residual", sol.residual);
    dj.put("residual_bound", sol.residual_bound);
    rep.put("dilation", std::move(dj));
    text_extra << "  dilation: q = " << sol.q.to_string() << " = "
               << fmt("%.12g", sol.q.value()) << ", residual "
               << fmt("%.3g", sol.residual) << "\n";
  }

  env.put("report", std::move(rep));
  std::ostringstream text;
  text << "sequences: " << spec.name() << " (" << kind_s << ")\n" << text_extra.str();
  return ok(std::move(env), opt, text.str());
}

// -------------------------------------------------------------------- phi

const std::set<std::string> kPhiKeys = {"phi", "csv", "x_lo", "x_points", "x_ratio",
                                        "t_max", "t_points", "conv_tol",
                                        "rho_zero_tol", "ox_zero_tol", "seed"};

CommandResult phi_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kPhiKeys);
  const FunctionSpec fn =
      cfg.has("csv") ? FunctionSpec::tabulated("csv:" + cfg.get_string("csv"),
                                               read_xy_csv(cfg.get_string("csv")))
                     : FunctionSpec::parse(cfg.get_string("phi"), opt.seed);
  phi::PhiOptions po;
  po.x_grid.clear();
  po.t_grid.clear();
  const double x_lo = cfg.get_double("x_lo", 10.0);
  const auto x_points = cfg.get_u64("x_points", 8);
  const double ratio = cfg.get_double("x_ratio", 10.0);
  double x = x_lo;
  for (std::uint64_t i = 0; i < x_points; ++i, x *= ratio) po.x_grid.push_back(x);
  const double t_max = cfg.get_double("t_max", 3.0);
  const auto t_points = cfg.get_u64("t_points", 31);
  for (std::uint64_t i = 0; i < t_points; ++i)
    po.t_grid.push_back(t_max * static_cast<double>(i) / static_cast<double>(t_points - 1));
  po.conv_tol = cfg.get_double("conv_tol", 1e-2);
  po.rho_zero_tol = cfg.get_double("rho_zero_tol", 1e-3);
  po.ox_zero_tol = cfg.get_double("ox_zero_tol", 1e-2);

  const auto pa = phi::estimate_rho(fn, po);
  Json env = envelope("phi", cfg, opt);
  Json rep = Json::object();
  rep.put("phi", fn.name());
  rep.put("rho_hat", pa.rho_hat);
  rep.put("sup_deviation", pa.sup_deviation);
  rep.put("o_x_ratio", pa.o_x_ratio);
  rep.put("classification", phi::phi_class_name(pa.classification));
  rep.put("eta_converged", pa.eta_converged);
  rep.put("note", pa.note);
  Json dev = Json::array();
  for (std::size_t i = 0; i < pa.deviation_profile.size(); ++i) {
    Json row = Json::object();
    row.put("x", po.x_grid[i]);
    row.put("sup_t_deviation", pa.deviation_profile[i]);
    row.put("phi_over_x", pa.ox_profile[i]);
    dev.push(std::move(row));
  }
  rep.put("profile", std::move(dev));
  env.put("report", std::move(rep));

  std::ostringstream text;
  text << "phi: " << fn.name() << ": rho_hat=" << fmt("%.9g", pa.rho_hat)
       << " classification=" << phi::phi_class_name(pa.classification)
       << " sup_deviation=" << fmt("%.3g", pa.sup_deviation)
       << " (" << pa.note << ")\n";
  return ok(std::move(env), opt, text.str());
}

// ------------------------------------------------------------------ table

const std::set<std::string> kTableKeys = {"kappa", "t_values", "seed"};

CommandResult table_impl(const Config& cfg, const CommonOptions& opt) {
  cfg.require_known_keys(kTableKeys);
  const double kappa = cfg.get_double("kappa");
  const auto ts = cfg.get_double_list("t_values", {0.5, 1.0, 2.0, 3.0});
  const std::vector<popa::PopaParam> params = {
      popa::PopaParam::finite(0.0), popa::PopaParam::finite(1.0),
      popa::PopaParam::infinite()};

  std::ostringstream text;
  text << "Beurling-Goldie kernel table, kappa = " << format_g12(kappa) << "\n";
  Json grid = Json::array();
  for (const auto& r : params) {
    for (const auto& s : params) {
      const kernels::KernelSpec spec{r, s, kappa};
      text << "  r=" << r.to_string() << " s=" << s.to_string() << "  K(t) = "
           << kernels::kernel_formula_text(r, s) << "  ["
           << kernels::equation_class_name(kernels::classify(r, s)) << "]\n";
      Json cell = Json::object();
      cell.put("r", r.to_string());
      cell.put("s", s.to_string());
      cell.put("formula", kernels::kernel_formula_text(r, s));
      cell.put("equation", kernels::equation_class_name(kernels::classify(r, s)));
      Json vals = Json::array();
      for (double t : ts) {
        if (!r.in_domain(t)) continue;
        const double v = kernels::kernel_eval(spec, t);
        text << "      K(" << format_g12(t) << ") = " << format_g12(v) << "\n";
        Json row = Json::object();
        row.put("t", t);
        row.put("K", Json::string(format_g12(v)));
        vals.push(std::move(row));
      }
      cell.put("values", std::move(vals));
      grid.push(std::move(cell));
    }
  }

  if (opt.format == "text") return CommandResult{text.str(), 0};
  Json env = envelope("table", cfg, opt);
  Json rep = Json::object();
  rep.put("kappa", kappa);
  rep.put("grid", std::move(grid));
  rep.put("text", text.str());
  env.put("report", std::move(rep));
  return ok(std::move(env), opt);
}

CommandResult fail_result(const std::string& command, const Config& cfg,
                          const CommonOptions& opt, const char* cls,
                          const std::string& what, int code) {
  if (opt.format == "text")
    return CommandResult{command + ": error (" + cls + "): " + what + "\n", code};
  Json env = envelope(command, cfg, opt);
  env.put("error", what);
  env.put("failure_class", cls);
  return CommandResult{env.dump(true), code};
}

CommandResult guarded(const std::function<CommandResult()>& body,
                      const std::string& command, const Config& cfg,
                      const CommonOptions& opt) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return fail_result(command, cfg, opt, "config", e.what(), 2);
  } catch (const PipelineError& e) {
    const char* cls = "data";
    switch (e.failure_class()) {
      case FailureClass::non_convergent: cls = "non_convergent"; break;
      case FailureClass::trivial_kernel: cls = "trivial_kernel"; break;
      case FailureClass::empty_anchors: cls = "empty_anchors"; break;
      case FailureClass::config: cls = "config"; break;
      default: break;
    }
    return fail_result(command, cfg, opt, cls, e.what(),
                       static_cast<int>(e.failure_class()));
  } catch (const std::exception& e) {
    return fail_result(command, cfg, opt, "data", e.what(), 6);
  }
}

}  // namespace

CommandResult cmd_analyze(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return analyze_impl(cfg, opt); }, "analyze", cfg, opt);
}
CommandResult cmd_verify_fe(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return verify_fe_impl(cfg, opt); }, "verify-fe", cfg, opt);
}
CommandResult cmd_esslim(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return esslim_impl(cfg, opt); }, "esslim", cfg, opt);
}
CommandResult cmd_sequences(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return sequences_impl(cfg, opt); }, "sequences", cfg, opt);
}
CommandResult cmd_phi(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return phi_impl(cfg, opt); }, "phi", cfg, opt);
}
CommandResult cmd_table(const Config& cfg, const CommonOptions& opt) {
  return guarded([&] { return table_impl(cfg, opt); }, "table", cfg, opt);
}

CommandResult run_command(const std::string& name, const Config& cfg,
                          const CommonOptions& opt) {
  if (name == "analyze") return cmd_analyze(cfg, opt);
  if (name == "verify-fe") return cmd_verify_fe(cfg, opt);
  if (name == "esslim") return cmd_esslim(cfg, opt);
  if (name == "sequences") return cmd_sequences(cfg, opt);
  if (name == "phi") return cmd_phi(cfg, opt);
  if (name == "table") return cmd_table(cfg, opt);
  return CommandResult{"unknown command: " + name + "\n", 2};
}

}  // namespace regvar::cli
