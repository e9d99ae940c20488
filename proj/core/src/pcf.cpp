#include "pivlag/pcf.hpp"

#include <algorithm>
#include <cmath>

#include "pivlag/errors.hpp"
#include "pivlag/gamma.hpp"

namespace pivlag {

namespace {

double mag(const Complex& z) { return std::hypot(z.re().to_double(), z.im().to_double()); }

// M(a, c, x) = sum (a)_k / (c)_k x^k / k!. Also reports the largest term size
// so the caller can measure cancellation.
Complex kummer_m(const Real& a, const Real& c, const Complex& x, Bits bits, Real& max_term) {
  Complex sum(Real(1), Real(0));
  Complex term(Real(1), Real(0));
  max_term = Real(1);
  Real eps = Real::pow2(-static_cast<long>(bits));
  double xm = mag(x);
  for (long k = 0; k < 1000000; ++k) {
    Real ak = a + k;
    if (ak.is_zero()) break;
    term *= x * (ak / ((c + k) * (k + 1)));
    sum += term;
    Real t = abs(term);
    if (t > max_term) max_term = t;
    if (static_cast<double>(k) > xm + std::fabs(a.to_double()) && t <= eps * max_term) break;
  }
  return sum;
}

Complex series_once(const Real& nu, const Complex& z, Bits wb, Real& loss_bits) {
  PrecisionScope scope(wb);
  PrecisionContext gctx(wb, 32);
  Complex x = z * z / 2;
  Real m1, m2;
  Complex a = kummer_m(-nu / 2, Real(0.5), x, wb, m1);
  Complex b = kummer_m((1 - nu) / 2, Real(1.5), x, wb, m2);
  Complex ca = sqrt(Real::pi()) * rgamma(Complex((1 - nu) / 2), gctx);
  Complex cb = sqrt(2 * Real::pi()) * rgamma(Complex(-nu / 2), gctx);
  Complex tb = cb * z;
  Complex body = ca * a - tb * b;
  Real big = max(abs(ca) * m1, abs(tb) * m2);
  Real small = abs(body);
  if (small.is_zero() || big.is_zero()) {
    loss_bits = big.is_zero() ? Real(0) : Real(static_cast<long>(wb));
  } else {
    loss_bits = log2(big / small);
  }
  Complex pref = exp(Complex(nu * Real::ln2() / 2) - z * z / 4);
  return pref * body;
}

Complex right_half(const Real& nu, const Complex& z, Bits bits) {
  if (mag(z) >= detail::pcf_switch_radius(nu)) {
    Complex out;
    if (detail::pcf_asymptotic(nu, z, bits, out)) return out;
  }
  return detail::pcf_series(nu, z, bits);
}

Complex pcf_d_general(const Real& nu, const Complex& z, const PrecisionContext& ctx);

}  // namespace

namespace detail {

double pcf_switch_radius(const Real& nu) {
  return std::max(8.0, 2.0 * std::sqrt(std::fabs(nu.to_double()) + 1.0));
}

Complex pcf_series(const Real& nu, const Complex& z, Bits bits) {
  double r = mag(z);
  Bits guard = 24 + static_cast<Bits>(std::ceil(1.1 * r * r));
  Complex out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Real loss;
    out = series_once(nu, z, bits + guard, loss);
    double lb = loss.to_double();
    if (lb + 8.0 <= static_cast<double>(guard) || attempt == 3) break;
    // A value that is exactly zero (or nearly so) at a real zero cannot be
    // resolved further; cap the growth.
    Bits need = static_cast<Bits>(std::ceil(lb)) + 32;
    if (need > 4 * (bits + guard)) need = 4 * (bits + guard);
    if (need <= guard) break;
    guard = need;
  }
  out.round_to(working_precision());
  return out;
}

bool pcf_asymptotic(const Real& nu, const Complex& z, Bits bits, Complex& out) {
  if (z.re().sign() < 0) return false;
  Bits wb = bits + 16;
  Complex res;
  {
    PrecisionScope scope(wb);
    Complex inv = Complex(Real(1)) / (z * z);
    Complex sum(Real(1), Real(0));
    Complex term(Real(1), Real(0));
    Real eps = Real::pow2(-static_cast<long>(bits) - 4);
    Real prev = Real::inf();
    bool converged = false;
    for (long k = 0; k < 100000; ++k) {
      Real f = -((nu - 2 * k) * (nu - 2 * k - 1)) / (2 * (k + 1));
      if (f.is_zero()) {
        converged = true;
        break;
      }
      term *= inv * f;
      Real t = abs(term);
      if (t > prev) break;  // terms started growing
      sum += term;
      prev = t;
      if (t <= eps) {
        converged = true;
        break;
      }
    }
    if (!converged) return false;
    Complex zn = pow(z, nu);
    res = zn * exp(-(z * z) / 4) * sum;
  }
  res.round_to(working_precision());
  out = std::move(res);
  return true;
}

}  // namespace detail

Complex pcf_d(const Real& nu, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  if (z.im().is_zero()) {
    // Real on the real axis; drop rounding noise from the connection formulas.
    Complex v = pcf_d_general(nu, z, ctx);
    v.im() = Real(0);
    return v;
  }
  return pcf_d_general(nu, z, ctx);
}

namespace {
Complex pcf_d_general(const Real& nu, const Complex& z, const PrecisionContext& ctx) {
  const Bits bits = ctx.bits;
  if (z.re().sign() >= 0) return right_half(nu, z, bits);
  Bits wb = bits + 24;
  Complex out;
  {
    PrecisionScope inner(wb);
    PrecisionContext gctx(wb, 32);
    Complex zz = z;
    zz.round_to(wb);
    Real nn = nu;
    nn.round_to(wb);
    Real pi = Real::pi();
    Complex rg = rgamma(Complex(-nn), gctx);
    Complex k = sqrt(2 * pi) * rg;
    Complex mnz = -zz;
    Real nu1 = -nn - 1;
    if (zz.im().sign() >= 0) {
      Complex e = Complex::polar(Real(1), nn * pi);
      Complex e2 = Complex::polar(Real(1), nn * pi / 2);
      Complex first = e * right_half(nn, mnz, wb);
      Complex second;
      if (!k.is_zero()) second = times_i(k * e2) * right_half(nu1, times_i(mnz), wb);
      out = first + second;
    } else {
      Complex e = Complex::polar(Real(1), -nn * pi);
      Complex e2 = Complex::polar(Real(1), -nn * pi / 2);
      Complex first = e * right_half(nn, mnz, wb);
      Complex second;
      if (!k.is_zero()) second = -times_i(k * e2) * right_half(nu1, times_i(zz), wb);
      out = first + second;
    }
  }
  out.round_to(bits);
  return out;
}
}  // namespace

Complex pcf_d_prime(const Real& nu, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Complex d = pcf_d(nu, z, ctx);
  Complex dm = pcf_d(nu - 1, z, ctx);
  return dm * nu - z * d / 2;
}

PcfEval pcf_eval(const Real& nu, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  PcfEval e;
  e.nu = nu;
  e.z = z;
  e.value = pcf_d(nu, z, ctx);
  Complex dm = pcf_d(nu - 1, z, ctx);
  e.dvalue = dm * nu - z * e.value / 2;
  return e;
}

Complex pcf_wronskian(const Real& nu, const Real& s, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Complex z(sqrt(Real(2)) * s);
  Complex d0 = pcf_d(nu, z, ctx);
  Complex d1 = pcf_d(nu - 1, z, ctx);
  Complex d2 = pcf_d(nu - 2, z, ctx);
  return sqrt(Real(2)) * (d1 * d1 * nu - d0 * d2 * (nu - 1));
}

std::vector<Complex> pcf_taylor_s(const Real& nu, const Real& s0, int order,
                                  const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Real r2 = sqrt(Real(2));
  Complex z0(r2 * s0);
  Complex d0 = pcf_d(nu, z0, ctx);
  Complex dm = pcf_d(nu - 1, z0, ctx);
  std::vector<Complex> d(static_cast<std::size_t>(std::max(order, 1)) + 1);
  d[0] = d0;
  d[1] = dm * nu - z0 * d0 / 2;
  // D'' = q D with q = q0 + (z0/2) h + h^2/4 in h = z - z0.
  Complex q0 = z0 * z0 / 4 - nu - Real(0.5);
  Complex q1 = z0 / 2;
  for (int k = 0; k + 2 <= order; ++k) {
    Complex acc = q0 * d[k];
    if (k >= 1) acc += q1 * d[k - 1];
    if (k >= 2) acc += d[k - 2] / 4;
    d[k + 2] = acc / static_cast<long>((k + 2) * (k + 1));
  }
  d.resize(static_cast<std::size_t>(order) + 1);
  Real scale(1);
  for (int k = 0; k <= order; ++k) {
    d[k] *= scale;
    scale *= r2;
  }
  return d;
}

std::vector<Real> pcf_real_zeros(const Real& nu, const Real& lo, const Real& hi,
                                 const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  std::vector<Real> zeros;
  if (!(lo < hi)) return zeros;
  // Scan at modest precision, then refine at full precision.
  PrecisionContext scan(std::max<Bits>(64, std::min<Bits>(ctx.bits, 96)), 32);
  double spacing = M_PI / std::sqrt(2.0 * std::fabs(nu.to_double()) + 1.0);
  double h = std::min(0.1, 0.2 * spacing);
  long count = std::max(2L, static_cast<long>(std::ceil((hi - lo).to_double() / h)));
  Real r2 = sqrt(Real(2));
  auto value = [&](const Real& s, const PrecisionContext& c) {
    PrecisionScope sc(c.bits);
    return pcf_d(nu, Complex(r2 * s), c).re();
  };
  auto refine = [&](Real a, Real b, Real fa) {
    // Safeguarded Newton with bisection fallback.
    Real x = (a + b) / 2;
    Real tol = ctx.tol() * max(Real(1), abs(x));
    for (int it = 0; it < 400; ++it) {
      Real s = x;
      Complex z(r2 * s);
      Real f = pcf_d(nu, z, ctx).re();
      if (f.is_zero()) return s;
      Real fprime = r2 * pcf_d_prime(nu, z, ctx).re();
      if ((f.sign() > 0) == (fa.sign() > 0)) {
        a = s;
        fa = f;
      } else {
        b = s;
      }
      Real next = s - f / fprime;
      if (!(next > a && next < b) || !fprime.is_finite() || fprime.is_zero()) next = (a + b) / 2;
      Real step = abs(next - s);
      x = next;
      if (step <= tol || abs(b - a) <= tol) return x;
    }
    throw Error(ErrorKind::NoConvergence, "zero refinement did not converge");
  };
  Real prev_s = lo;
  Real prev_f = value(lo, scan);
  if (prev_f.is_zero()) zeros.push_back(lo);
  for (long i = 1; i <= count; ++i) {
    Real s = (i == count) ? hi : lo + (hi - lo) * i / count;
    Real f = value(s, scan);
    if (f.is_zero()) {
      zeros.push_back(s);
    } else if (!prev_f.is_zero() && f.sign() != prev_f.sign()) {
      Real fa = value(prev_s, ctx);
      zeros.push_back(refine(prev_s, s, fa));
    }
    prev_s = s;
    prev_f = f;
  }
  return zeros;
}

}  // namespace pivlag
