#include "pivlag/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pivlag/errors.hpp"

namespace pivlag {

RecurrenceTable recurrence_from_moments(const MomentTable& tbl, long n, const PrecisionContext& ctx) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "degree must be nonnegative");
  if (static_cast<long>(tbl.values.size()) < 2 * n + 2) {
    throw Error(ErrorKind::InvalidArgument,
                "need mu_0..mu_" + std::to_string(2 * n + 1) + " for degree " + std::to_string(n));
  }
  PrecisionScope scope(ctx.bits);
  const auto& mu = tbl.values;
  if (mu[0].is_zero()) throw Error(ErrorKind::ExistenceFailure, "mu_0 vanishes");
  RecurrenceTable rt;
  rt.params = tbl.params;
  rt.a.assign(static_cast<std::size_t>(n) + 1, Complex(Real(0), Real(0)));
  rt.b.assign(static_cast<std::size_t>(n) + 1, Complex(Real(0), Real(0)));
  rt.existence_ok.assign(static_cast<std::size_t>(n) + 1, true);
  const long top = 2 * n + 1;
  std::vector<Complex> prev2(static_cast<std::size_t>(top) + 1, Complex(Real(0), Real(0)));
  std::vector<Complex> prev(mu.begin(), mu.begin() + top + 1);
  rt.b[0] = mu[1] / mu[0];
  Real floor = Real::pow2(-static_cast<long>(ctx.bits) / 2);
  for (long k = 1; k <= n; ++k) {
    std::vector<Complex> cur(static_cast<std::size_t>(top) + 1, Complex(Real(0), Real(0)));
    const Complex& bk = rt.b[k - 1];
    const Complex& ak = rt.a[k - 1];
    Real biggest(0);
    for (long l = k; l <= top - k; ++l) {
      Complex t1 = prev[l + 1];
      Complex t2 = bk * prev[l];
      Complex t3 = (k >= 2) ? ak * prev2[l] : Complex(Real(0), Real(0));
      if (l == k) biggest = max(abs(t1), max(abs(t2), abs(t3)));
      cur[l] = t1 - t2 - t3;
    }
    if (abs(cur[k]) <= floor * biggest || cur[k].is_zero()) {
      rt.existence_ok[k] = false;
      throw Error(ErrorKind::ExistenceFailure,
                  "leading Hankel ratio cancels at degree " + std::to_string(k));
    }
    rt.a[k] = cur[k] / prev[k - 1];
    rt.b[k] = cur[k + 1] / cur[k] - prev[k] / prev[k - 1];
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
  return rt;
}

Complex determinant(std::vector<std::vector<Complex>> m) {
  const std::size_t k = m.size();
  Complex det(Real(1), Real(0));
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    Real best = abs(m[c][c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      Real v = abs(m[r][c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best.is_zero()) return Complex(Real(0), Real(0));
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      Complex f = m[r][c] / m[c][c];
      for (std::size_t j = c + 1; j < k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

namespace {

// det[mu_{i+j}] with the last column's indices shifted by `shift`.
Complex hankel_det(const std::vector<Complex>& mu, long k, long shift) {
  if (k == 0) return shift == 0 ? Complex(Real(1), Real(0)) : Complex(Real(0), Real(0));
  std::vector<std::vector<Complex>> m(static_cast<std::size_t>(k),
                                      std::vector<Complex>(static_cast<std::size_t>(k)));
  for (long i = 0; i < k; ++i) {
    for (long j = 0; j < k; ++j) {
      long idx = i + j + (j == k - 1 ? shift : 0);
      m[i][j] = mu[idx];
    }
  }
  return determinant(std::move(m));
}

}  // namespace

std::pair<Complex, Complex> hankel_ratio_oracle(const MomentTable& tbl, long n,
                                                const PrecisionContext& ctx) {
  if (static_cast<long>(tbl.values.size()) < 2 * n + 2) {
    throw Error(ErrorKind::InvalidArgument, "not enough moments for the Hankel oracle");
  }
  PrecisionScope scope(ctx.bits);
  const auto& mu = tbl.values;
  Complex dn1 = hankel_det(mu, n + 1, 0);
  Complex dn = hankel_det(mu, n, 0);
  Complex dm1 = n >= 1 ? hankel_det(mu, n - 1, 0) : Complex(Real(0), Real(0));
  if (dn1.is_zero() || dn.is_zero()) {
    throw Error(ErrorKind::ExistenceFailure, "vanishing Hankel determinant");
  }
  Complex a = n >= 1 ? dn1 * dm1 / (dn * dn) : Complex(Real(0), Real(0));
  Complex delta1 = hankel_det(mu, n + 1, 1);
  Complex delta0 = hankel_det(mu, n, 1);
  Complex b = delta1 / dn1 - delta0 / dn;
  return {a, b};
}

std::pair<Real, Real> laguerre_exact_at(const ModelParams& p, long k) {
  if (!p.b.is_zero()) throw Error(ErrorKind::RequiresBZero, "exact Laguerre needs b = 0");
  Real kk(k);
  Real a = kk * (kk + p.alpha) / (p.N * p.N);
  Real b = (2 * kk + p.alpha + 1) / p.N;
  return {a, b};
}

std::pair<Real, Real> laguerre_exact(const ModelParams& p) { return laguerre_exact_at(p, p.n); }

std::vector<Complex> poly_coeffs(const RecurrenceTable& rt, long n, const PrecisionContext& ctx) {
  if (n > rt.degree()) throw Error(ErrorKind::InvalidArgument, "degree beyond the table");
  PrecisionScope scope(ctx.bits);
  std::vector<Complex> pm1;                                // pi_{-1} = 0
  std::vector<Complex> p0{Complex(Real(1), Real(0))};      // pi_0 = 1
  for (long k = 0; k < n; ++k) {
    std::vector<Complex> next(p0.size() + 1, Complex(Real(0), Real(0)));
    for (std::size_t i = 0; i < p0.size(); ++i) {
      next[i + 1] += p0[i];
      next[i] -= rt.b[k] * p0[i];
    }
    if (k >= 1) {
      for (std::size_t i = 0; i < pm1.size(); ++i) next[i] -= rt.a[k] * pm1[i];
    }
    pm1 = std::move(p0);
    p0 = std::move(next);
  }
  // Drop imaginary noise once it is verified small.
  for (auto& c : p0) {
    if (abs(c.im()) <= ctx.tol() * (abs(c.re()) + 1)) c.im() = Real(0);
  }
  return p0;
}

namespace {

void horner(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp, Real& scale) {
  std::size_t n = c.size() - 1;
  p = c[n];
  dp = Complex(Real(0), Real(0));
  scale = abs(c[n]);
  Real az = abs(z);
  for (std::size_t i = n; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
    scale = scale * az + abs(c[i]);
  }
}

}  // namespace

ZeroSet zeros(const std::vector<Complex>& coeffs, const PrecisionContext& ctx,
              const AberthOptions& opts) {
  if (coeffs.size() < 2) throw Error(ErrorKind::InvalidArgument, "degree must be at least 1");
  PrecisionScope scope(ctx.bits);
  const long n = static_cast<long>(coeffs.size()) - 1;
  std::vector<Complex> c = coeffs;
  if (!(c[n] == Complex(Real(1), Real(0)))) {
    Complex lead = c[n];
    for (auto& x : c) x = x / lead;
  }
  Complex centroid = -c[n - 1] / n;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    Real ang = 2 * Real::pi() * k / n + Real(0.4) / n + Real(0.25);
    z[k] = centroid + Complex::polar(Real(1), ang);
  }
  Real tol = ctx.tol();
  std::vector<Complex> w(static_cast<std::size_t>(n));
  bool converged = false;
  for (int it = 0; it < opts.max_iterations && !converged; ++it) {
    Real worst(0);
    for (long i = 0; i < n; ++i) {
      Complex p, dp;
      Real sc;
      horner(c, z[i], p, dp, sc);
      if (p.is_zero()) {
        w[i] = Complex(Real(0), Real(0));
        continue;
      }
      Complex ratio = p / dp;
      Complex sum;
      for (long j = 0; j < n; ++j) {
        if (j != i) sum += Complex(Real(1), Real(0)) / (z[i] - z[j]);
      }
      w[i] = ratio / (Complex(Real(1), Real(0)) - ratio * sum);
      Real rel = abs(w[i]) / max(Real(1), abs(z[i]));
      if (rel > worst) worst = rel;
    }
    for (long i = 0; i < n; ++i) z[i] -= w[i];
    if (worst <= tol) converged = true;
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "Aberth iteration did not converge");
  ZeroSet zs;
  zs.degree = n;
  zs.max_residual = Real(0);
  zs.max_rel_residual = Real(0);
  for (long i = 0; i < n; ++i) {
    Complex p, dp;
    Real sc;
    horner(c, z[i], p, dp, sc);
    Real r = abs(p);
    if (r > zs.max_residual) zs.max_residual = r;
    Real rr = sc.is_zero() ? r : r / sc;
    if (rr > zs.max_rel_residual) zs.max_rel_residual = rr;
  }
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
  });
  zs.zeros = std::move(z);
  return zs;
}

}  // namespace pivlag
