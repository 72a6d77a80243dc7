// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_RNG_HPP
#define REGVAR_RNG_HPP

#include <cstdint>
#include <cstring>
#include <random>

namespace regvar {

// splitmix64: used for seed expansion and hash-based spike placement.
// Output is pinned by the algorithm, not by any library distribution.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. Avoids std::*_distribution (whose output is
/// implementation-defined) so identical seeds give identical streams on any
/// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::mt19937_64 engine_;
};

/// Deterministic per-point coin flip with probability `fraction`, keyed on
/// the bit pattern of x and a seed. Lets spike injection act as a genuine
/// (if wild) pointwise function.
inline bool hash_coin(double x, std::uint64_t seed, double fraction) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  const double u = static_cast<double>(splitmix64(bits ^ seed) >> 11) * 0x1.0p-53;
  return u < fraction;
}

}  // namespace regvar

#endif  // REGVAR_RNG_HPP
