#include "pivlag/precision.hpp"

namespace pivlag {

PrecisionContext::PrecisionContext() : PrecisionContext(128, 32) {}

PrecisionContext::PrecisionContext(Bits b, Bits g) : bits(b), guard_bits(g) {
  PrecisionScope scope(bits > 64 ? bits : 64);
  target_rel_tol = Real::pow2(-(static_cast<long>(b) - static_cast<long>(g)));
}

PrecisionContext::PrecisionContext(Bits b, Bits g, Real t)
    : bits(b), guard_bits(g), target_rel_tol(std::move(t)) {}

void PrecisionContext::validate() const {
  if (bits < 64) throw Error(ErrorKind::InvalidArgument, "bits must be at least 64");
  if (guard_bits < 32) throw Error(ErrorKind::InvalidArgument, "guard_bits must be at least 32");
  Real floor = Real::pow2(-(static_cast<long>(bits) - static_cast<long>(guard_bits)));
  if (!(target_rel_tol >= floor)) {
    throw Error(ErrorKind::InvalidArgument, "target_rel_tol below 2^(guard_bits - bits)");
  }
}

PrecisionContext PrecisionContext::doubled() const { return with_bits(bits * 2); }

PrecisionContext PrecisionContext::with_bits(Bits b) const {
  PrecisionContext c(b, guard_bits, target_rel_tol);
  c.target_rel_tol.round_to(b);
  return c;
}

Real discrepancy(const Real& a, const Real& b) {
  if (!a.is_finite() || !b.is_finite()) return Real::inf();
  Real scale = max(abs(a), abs(b));
  Real d = abs(a - b);
  if (scale.is_zero()) return d;
  return d / scale;
}

Real discrepancy(const Complex& a, const Complex& b) {
  if (!a.is_finite() || !b.is_finite()) return Real::inf();
  Real scale = max(abs(a), abs(b));
  Real d = abs(a - b);
  if (scale.is_zero()) return d;
  return d / scale;
}

}  // namespace pivlag
