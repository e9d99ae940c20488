#include "pivlag/weight.hpp"

#include <algorithm>
#include <cmath>

#include "pivlag/errors.hpp"
#include "pivlag/gamma.hpp"

namespace pivlag {

ModelParams ModelParams::make(const Real& nu, const Real& b, const Real& L, long n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  ModelParams p;
  p.nu = nu * 1;
  p.b = b * 1;
  p.L = L * 1;
  p.n = n;
  Real rn(n);
  p.alpha = nu - rn;
  p.N = rn + sqrt(Real(2)) * L * sqrt(rn);
  if (!(p.N > Real(0))) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  p.t = p.N / rn;
  p.A = 1 - nu / rn;
  return p;
}

ModelParams ModelParams::with_n(long m) const { return make(nu, b, L, m); }

namespace {

Real arg_0_2pi_strict(const Complex& z) {
  Real a = atan2(z.im(), z.re());
  if (a.sign() < 0 || (a.is_zero() && z.im().sign() < 0)) a += 2 * Real::pi();
  return a;
}

// |z|^a e^{i a arg z} with arg in (0, 2pi).
Complex branch_pow(const Complex& z, const Real& a) {
  Real mod = abs(z);
  Real th = arg_0_2pi_strict(z);
  return Complex::polar(pow(mod, a), a * th);
}

}  // namespace

Complex weight_eval(const Complex& z, const ModelParams& p, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Real scale = max(Real(1), abs(z));
  if (abs(z.im()) <= ctx.tol() * scale && z.re() >= -ctx.tol() * scale) {
    throw Error(ErrorKind::OnCut, "z lies on [0, inf)");
  }
  Complex w = branch_pow(z, p.alpha) * exp(-(z * p.N));
  if (!p.b.is_zero()) w *= branch_pow(z - Complex(Real(1)), 2 * p.b);
  return w;
}

ContourSpec default_contour(const ModelParams& p, Bits bits, long m) {
  ContourSpec c;
  c.rho = min(Real(1) / p.t, Real(0.9));
  c.eps = min(Real(0.4), c.rho / 2);
  if (m < 0) m = 2 * p.n + 1;
  double e = std::max(0.0, (p.alpha + m + 2 * p.b).to_double());
  double Nd = p.N.to_double();
  double rho = c.rho.to_double();
  double nd = static_cast<double>(p.n);
  double rhs = -(static_cast<double>(bits) + 10.0) * std::log(2.0) -
               nd * (p.t.to_double() * rho - std::log(rho));
  auto g = [&](double R) { return e * std::log(R) - Nd * R - rhs; };
  // g is concave; find the root beyond its maximum.
  double lo = std::max(1.5, e / Nd);
  double hi = lo * 2;
  while (g(hi) > 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > 0) lo = mid;
    else hi = mid;
  }
  c.R = Real(std::ceil(hi * 64.0) / 64.0);
  return c;
}

Path contour_path(const ContourSpec& c) {
  Real x0 = sqrt(c.rho * c.rho - c.eps * c.eps);
  Real th = atan2(c.eps, x0);
  Real two_pi = 2 * Real::pi();
  Path path;
  path.push_back(PathSegment::line(Complex(c.R, -c.eps), Complex(x0, -c.eps)));
  path.push_back(PathSegment::arc(Complex(Real(0)), c.rho, two_pi - th, th));
  path.push_back(PathSegment::line(Complex(x0, c.eps), Complex(c.R, c.eps)));
  return path;
}

Bits moment_bits(const ModelParams& p, Bits requested) {
  double rho = std::min(1.0 / p.t.to_double(), 0.9);
  double loss = static_cast<double>(p.n) * (p.t.to_double() * rho - std::log(rho)) / std::log(2.0);
  return static_cast<Bits>(std::ceil(loss)) + requested + 64;
}

std::string method_name(MomentMethod m) {
  return m == MomentMethod::Quadrature ? "quadrature" : "closed_form";
}

bool closed_form_capable(const Real& b) {
  Real twob = 2 * b;
  return twob.is_integer() && twob.sign() >= 0;
}

std::vector<Complex> laguerre_moments(const Real& alpha, const Real& N, long m,
                                      const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  std::vector<Complex> mu(static_cast<std::size_t>(m) + 1);
  Real a1 = alpha + 1;
  Complex phase = Complex::polar(Real(1), Real::pi() * a1);
  Complex rg = rgamma(Complex(-alpha), ctx);
  Complex minus_two_pi_i(Real(0), -2 * Real::pi());
  mu[0] = minus_two_pi_i * phase * rg / pow(N, a1);
  for (long j = 0; j < m; ++j) mu[j + 1] = mu[j] * ((alpha + j + 1) / N);
  return mu;
}

MomentTable moments(const ModelParams& p, long m, MomentMethod method, const PrecisionContext& ctx,
                    const std::optional<ContourSpec>& contour) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "moment count must be nonnegative");
  PrecisionScope scope(ctx.bits);
  MomentTable tbl;
  tbl.params = p;
  tbl.prec_bits = ctx.bits;
  tbl.method = method;
  if (method == MomentMethod::ClosedForm) {
    if (!closed_form_capable(p.b)) {
      throw Error(ErrorKind::UnsupportedClosedForm, "closed form needs 2b in N_0");
    }
    long k = (2 * p.b).to_long();
    std::vector<Complex> base = laguerre_moments(p.alpha, p.N, m + k, ctx);
    tbl.values.resize(static_cast<std::size_t>(m) + 1);
    // (z - 1)^k = sum_i C(k, i) (-1)^{k-i} z^i.
    std::vector<long> binom(static_cast<std::size_t>(k) + 1, 1);
    for (long i = 1; i <= k; ++i) binom[i] = binom[i - 1] * (k - i + 1) / i;
    for (long j = 0; j <= m; ++j) {
      Complex acc;
      for (long i = 0; i <= k; ++i) {
        long c = ((k - i) % 2 == 0) ? binom[i] : -binom[i];
        acc += base[j + i] * c;
      }
      tbl.values[j] = std::move(acc);
    }
    return tbl;
  }
  ContourSpec c = contour ? *contour : default_contour(p, ctx.bits, m);
  Path path = contour_path(c);
  std::size_t count = static_cast<std::size_t>(m) + 1;
  VectorIntegrand f = [&](const Complex& z, std::vector<Complex>& out) {
    out.resize(count);
    Complex w = weight_eval(z, p, ctx);
    for (std::size_t j = 0; j < count; ++j) {
      out[j] = w;
      w = w * z;
    }
  };
  VecQuadResult r = integrate_path(f, count, path, ctx);
  tbl.values = std::move(r.values);
  tbl.errors = std::move(r.errors);
  return tbl;
}

}  // namespace pivlag
