// Precision policy and the escalating-precision driver.
#pragma once

#include <utility>
#include <vector>

#include "pivlag/errors.hpp"
#include "pivlag/mp.hpp"

namespace pivlag {

struct PrecisionContext {
  Bits bits = 128;
  Bits guard_bits = 32;
  /// Requested relative accuracy; defaults to 2^{-(bits - guard_bits)}.
  Real target_rel_tol;

  PrecisionContext();
  explicit PrecisionContext(Bits bits, Bits guard_bits = 32);
  PrecisionContext(Bits bits, Bits guard_bits, Real tol);

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;

  /// Same tolerance, twice the bits.
  PrecisionContext doubled() const;
  /// Same tolerance, given bits (at least as many as the tolerance needs).
  PrecisionContext with_bits(Bits b) const;

  /// Tolerance as a Real at the context precision.
  const Real& tol() const { return target_rel_tol; }
};

/// Relative discrepancy |a - b| / max(|a|, |b|, tiny), used to decide stabilization.
Real discrepancy(const Real& a, const Real& b);
Real discrepancy(const Complex& a, const Complex& b);
template <class T>
Real discrepancy(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return Real::inf();
  Real worst(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Real d = discrepancy(a[i], b[i]);
    if (!(d <= worst)) worst = d;
  }
  return worst;
}

template <class T>
struct Escalated {
  T value;
  PrecisionContext ctx;
};

/// Runs compute(ctx) at increasing precision until two successive results
/// agree to ctx.target_rel_tol. The measure of agreement is supplied by
/// `distance`, which defaults to discrepancy().
template <class F, class D>
auto with_escalating_precision(F&& compute, const PrecisionContext& start, Bits max_bits,
                               D&& distance) -> Escalated<decltype(compute(start))> {
  using T = decltype(compute(start));
  start.validate();
  PrecisionContext ctx = start;
  T prev = [&] {
    PrecisionScope scope(ctx.bits);
    return compute(ctx);
  }();
  while (ctx.bits * 2 <= max_bits) {
    PrecisionContext next = ctx.doubled();
    T cur = [&] {
      PrecisionScope scope(next.bits);
      return compute(next);
    }();
    bool agree = false;
    {
      PrecisionScope scope(next.bits);
      Real d = distance(prev, cur);
      agree = d <= next.tol();
    }
    if (agree) return Escalated<T>{std::move(cur), next};
    prev = std::move(cur);
    ctx = next;
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "no agreement below " + std::to_string(static_cast<long>(max_bits)) + " bits");
}

template <class F>
auto with_escalating_precision(F&& compute, const PrecisionContext& start, Bits max_bits) {
  return with_escalating_precision(
      std::forward<F>(compute), start, max_bits,
      [](const auto& a, const auto& b) { return discrepancy(a, b); });
}

}  // namespace pivlag
