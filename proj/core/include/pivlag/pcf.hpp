// Parabolic cylinder functions D_nu(z): real order, complex argument.
//
// Convention: D'' = (z^2/4 - nu - 1/2) D and D_nu(z) ~ z^nu e^{-z^2/4} as
// z -> +infinity.
#pragma once

#include <vector>

#include "pivlag/mp.hpp"
#include "pivlag/precision.hpp"

namespace pivlag {

struct PcfEval {
  Real nu;
  Complex z;
  Complex value;
  Complex dvalue;
};

Complex pcf_d(const Real& nu, const Complex& z, const PrecisionContext& ctx);

/// -(z/2) D_nu(z) + nu D_{nu-1}(z).
Complex pcf_d_prime(const Real& nu, const Complex& z, const PrecisionContext& ctx);

PcfEval pcf_eval(const Real& nu, const Complex& z, const PrecisionContext& ctx);

/// Wronskian with respect to s of (D_{nu-1}(sqrt2 s), D_nu(sqrt2 s)).
/// For W(D_mu, D_{mu+1}) pass nu = mu + 1.
Complex pcf_wronskian(const Real& nu, const Real& s, const PrecisionContext& ctx);

/// Simple real zeros in s of D_nu(sqrt2 s) on [lo, hi], ascending.
std::vector<Real> pcf_real_zeros(const Real& nu, const Real& lo, const Real& hi,
                                 const PrecisionContext& ctx);

/// Taylor coefficients of s -> D_nu(sqrt2 s) about s0, up to `order` inclusive.
std::vector<Complex> pcf_taylor_s(const Real& nu, const Real& s0, int order,
                                  const PrecisionContext& ctx);

namespace detail {
/// Power series evaluation; exposed for tests of the regime overlap.
Complex pcf_series(const Real& nu, const Complex& z, Bits bits);
/// Large-|z| expansion for Re z >= 0; returns false when the expansion cannot
/// reach 2^{-bits}.
bool pcf_asymptotic(const Real& nu, const Complex& z, Bits bits, Complex& out);
/// Radius beyond which the asymptotic branch is attempted.
double pcf_switch_radius(const Real& nu);
}  // namespace detail

}  // namespace pivlag
