// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Admissible-sequence generation and verification, Croftian hitting
// experiments, and the phi-dilation construction with its rational solver.

#ifndef REGVAR_SEQUENCES_HPP
#define REGVAR_SEQUENCES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regvar/functions.hpp"
#include "regvar/rational.hpp"

namespace regvar::seq {

enum class AdmissibilityKind { additive, multiplicative };

/// A divergent sequence generator, addressable by name + parameters:
///   identity            x_n = n
///   log_ramp(beta)      c_n = beta * log n
///   power_ramp(alpha)   x_n = n^alpha
///   sqrt_ramp           x_n = sqrt(n)
///   rational_sweep      block enumeration of rationals with increasing
///                       magnitude: x_n = m + j/(2m+1), m = floor(sqrt(n))
/// plus custom tabulated data. Generators are 1-based and O(1) per term.
class SequenceSpec {
 public:
  SequenceSpec() = default;

  double term(std::uint64_t n) const;
  std::vector<double> prefix(std::uint64_t count) const;

  AdmissibilityKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  static SequenceSpec parse(const std::string& text, AdmissibilityKind kind);
  static SequenceSpec identity(AdmissibilityKind kind = AdmissibilityKind::multiplicative);
  static SequenceSpec log_ramp(double beta);
  static SequenceSpec power_ramp(double alpha,
                                 AdmissibilityKind kind = AdmissibilityKind::additive);
  static SequenceSpec rational_sweep();
  static SequenceSpec tabulated(std::string name, std::vector<double> terms,
                                AdmissibilityKind kind);

 private:
  enum class Family { identity, log_ramp, power_ramp, rational_sweep, tabulated };
  Family family_ = Family::identity;
  double param_ = 1.0;
  AdmissibilityKind kind_ = AdmissibilityKind::multiplicative;
  std::string name_ = "identity";
  std::shared_ptr<const std::vector<double>> data_;
};

/// Finite-prefix admissibility witness. A passing verdict means the prefix
/// is *consistent with* admissibility, never a proof.
struct AdmissibilityReport {
  bool passes = false;
  double worst_gap = 0.0;         // max |c_{n+1}-c_n| or |c_{n+1}/c_n - 1| over n >= n0
  std::size_t worst_index = 0;    // 0-based index attaining worst_gap
  bool divergence_witness = false;  // prefix max >= 10x first term
  std::string verdict_text;       // "consistent with admissible" / "fails ..."
};

/// Checks vanishing gaps (additive) or ratios -> 1 (multiplicative) from
/// index n0 on, under tolerance tol, plus a crude divergence witness.
/// Throws DomainError if the prefix is shorter than n0 + 2, or on
/// nonpositive terms under the multiplicative kind.
AdmissibilityReport admissibility_report(const std::vector<double>& prefix,
                                         AdmissibilityKind kind,
                                         std::size_t n0, double tol);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;  // may be +inf in open-set windows
};

/// Open unbounded set at desk scale: explicit windows (upper bound may be
/// +inf) plus an optional periodically extended cell pattern.
struct OpenSetDescriptor {
  std::vector<Interval> windows;
  double period = 0.0;           // 0 = no periodic part
  std::vector<Interval> cells;   // sub-intervals of [0, period)

  bool contains(double x) const;
  bool unbounded() const;
  static OpenSetDescriptor periodic(double period, std::vector<Interval> cells);
  static OpenSetDescriptor half_line(double from);
};

struct GapStats {
  std::uint64_t count = 0;
  std::uint64_t min_gap = 0;
  std::uint64_t max_gap = 0;
  double mean_gap = 0.0;
};

struct HitReport {
  double probe = 0.0;
  std::uint64_t hit_count = 0;
  std::vector<std::uint64_t> hit_indices;  // capped; every entry re-checkable
  bool indices_truncated = false;
  GapStats gap_stats;
};

/// Scans probe_grid interior points of I (odd counts include the midpoint)
/// and returns the probe maximizing #{n <= N : c_n + x in G}; ties go to the
/// smallest probe. Deterministic and independent of evaluation order.
HitReport croft_hit_search(const SequenceSpec& seq, Interval I,
                           const OpenSetDescriptor& G, std::uint64_t N,
                           std::size_t probe_grid,
                           std::size_t index_cap = 10000);

/// h_q(s) = (q o_phi lambda) o_phi s = q + lambda*phi(q) + s*phi(q + lambda*phi(q)).
double phi_dilation(double q, double lambda, double s, const FunctionSpec& phi);

struct DilationSolution {
  Rational q;              // rational approximation of the root
  double x_root = 0.0;     // bracketing-search root of h_x(a) = b
  double residual = 0.0;   // |h_q(a) - b|, re-verified by direct evaluation
  double residual_bound = 0.0;  // modulus-of-continuity bound on the bracket
};

/// Solves h_q(a_target) = b_target for rational q: bisection on
/// x -> phi_dilation(x, lambda, a_target) - b_target, then the minimal-
/// denominator rational within q_tol of the root. Throws DomainError with
/// the minimal feasible b when b_target is below the solvable range.
DilationSolution phi_dilation_solve(const FunctionSpec& phi, double lambda,
                                    double a_target, double b_target,
                                    double q_tol);

}  // namespace regvar::seq

#endif  // REGVAR_SEQUENCES_HPP
