// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form evaluation of the nine continuous solution families of the
// Beurling-Goldie equation K(u o_r v) = K(u) o_s K(v), and residual checks
// for the whole functional-equation family built on the Popa operation.
//
// The table, indexed by the domain-side parameter r (rows) and the
// codomain-side parameter s (columns), with index kappa:
//
//              s = 0              s in (0, inf)          s = inf
//   r = 0      kappa*t            (e^{kappa t} - 1)/s    e^{kappa t}
//   r finite   kappa*log(1+rt)    [(1+rt)^kappa - 1]/s   (1+rt)^kappa
//   r = inf    kappa*log t        (t^kappa - 1)/s        t^kappa
//
// Equivalently K = W_s^{-1}((W_r(t))^kappa) with W_0 = exp, W_r(t) = 1+rt,
// W_inf = id; both routes are implemented and cross-checkable.

#ifndef REGVAR_KERNELS_HPP
#define REGVAR_KERNELS_HPP

#include <functional>
#include <string>
#include <vector>

#include "regvar/popa.hpp"

namespace regvar::kernels {

using popa::PopaParam;

/// One cell of the solution table: domain group r, codomain group s, index.
struct KernelSpec {
  PopaParam r;
  PopaParam s;
  double kappa = 0.0;
};

enum class EquationClass {
  cfe_additive,        // (r, s) = (0, 0)
  cfe_multiplicative,  // (r, s) = (inf, inf)
  goldie,              // r = 0, any other s
  cj,                  // s = inf, r != 0
  bg_general,          // everything else
};

/// Classification is a pure function of (r, s); the corner cells reproduce
/// the classical Cauchy-equation variants.
EquationClass classify(const PopaParam& r, const PopaParam& s);

std::string equation_class_name(EquationClass c);

/// Explicit table formula for the (r, s) cell at index kappa.
/// Domain: t > r.boundary(). Throws DomainError outside it.
double kernel_eval(const KernelSpec& spec, double t);

/// The same kernel through the isomorphism route W_s^{-1}(W_r(t)^kappa).
/// A genuinely different floating path, used to cross-check kernel_eval.
double kernel_eval_isomorphic(const KernelSpec& spec, double t);

/// |K(u o_r v) - (K(u) o_s K(v))| for the table kernel of `spec`.
double bg_residual(const KernelSpec& spec, double u, double v);

/// Same defect for an arbitrary kernel function (broken-kernel demos).
double bg_residual_fn(const std::function<double(double)>& kernel,
                      const PopaParam& r, const PopaParam& s,
                      double u, double v);

/// |K(u o_r v) - K(u)K(v)|; requires s = inf (the Chudziak-Jablonska case).
double cj_residual(const KernelSpec& spec, double u, double v);

/// |sigma(K(u)) - r(u)| where sigma(w) = 1 + s*w and r(u) is recovered from
/// the kernel by a central difference quotient at the group identity
/// (step 1e-6). Requires finite s and kappa != 0 (else SingularityError).
double sigma_relation_check(const KernelSpec& spec, double u);

/// True iff every value is within tol of 0 or of 1 (the blanket
/// non-triviality assumption's trivial range).
bool is_trivial(const std::vector<double>& values, double tol);

/// Human-readable formula of the (r, s) cell, for the CLI table dump.
std::string kernel_formula_text(const PopaParam& r, const PopaParam& s);

}  // namespace regvar::kernels

#endif  // REGVAR_KERNELS_HPP
