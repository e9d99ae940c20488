// Seeded generators and a small property runner for the test suites.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pivlag/mp.hpp"

namespace pivlag::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  /// Real in [lo, hi] at least `gap` away from every integer.
  Real non_integer(double lo, double hi, double gap = 0.05) {
    for (;;) {
      double v = uniform(lo, hi);
      if (std::abs(v - std::round(v)) > gap) return Real(v);
    }
  }

  /// b with 2b in {0, 1, 2}.
  Real half_integer_b() { return Real(0.5 * static_cast<double>(integer(0, 2))); }

  Complex complex_in_box(double lo, double hi) { return Complex(Real(uniform(lo, hi)), Real(uniform(lo, hi))); }

 private:
  std::mt19937_64 rng_;
};

/// Runs `prop` on `cases` independent generators derived from `seed`; the
/// first failing case index is reported through gtest.
inline void for_all(std::uint64_t seed, int cases, const std::function<void(Gen&, int)>& prop) {
  for (int i = 0; i < cases; ++i) {
    Gen g(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    SCOPED_TRACE("property case " + std::to_string(i) + " (seed " + std::to_string(seed) + ")");
    prop(g, i);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline double rel(const Complex& got, const Complex& want) {
  Real d = abs(got - want);
  Real s = abs(want);
  return (s.is_zero() ? d : d / s).to_double();
}

inline double rel(const Real& got, const Real& want) {
  Real d = abs(got - want);
  Real s = abs(want);
  return (s.is_zero() ? d : d / s).to_double();
}

}  // namespace pivlag::testing
