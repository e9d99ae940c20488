#include "pivlag/gamma.hpp"

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace pivlag {

namespace {

// B_{2k} from tangent numbers, kept as exact rationals.
class BernoulliTable {
 public:
  const mpq_class& get(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (k >= static_cast<int>(b_.size())) extend(std::max(k + 1, 2 * static_cast<int>(b_.size())));
    return b_[k];
  }

 private:
  void extend(int count) {
    int n = count;  // T_1..T_{n-1}
    std::vector<mpz_class> t(n + 1);
    t[1] = 1;
    for (int k = 2; k <= n; ++k) t[k] = t[k - 1] * (k - 1);
    for (int k = 2; k <= n; ++k) {
      for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    }
    b_.assign(n, mpq_class(0));
    b_[0] = 1;
    for (int k = 1; k < n; ++k) {
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, 2 * k);
      mpz_class num = 2 * k * t[k];
      if (k % 2 == 0) num = -num;
      b_[k] = mpq_class(num, p2 * (p2 - 1));
      b_[k].canonicalize();
    }
  }

  std::mutex mu_;
  std::vector<mpq_class> b_{mpq_class(1)};
};

BernoulliTable& table() {
  static BernoulliTable t;
  return t;
}

bool near_nonpositive_integer(const Complex& z, const PrecisionContext& ctx) {
  if (z.re() > Real(0.5)) return false;
  Real k = round(z.re());
  if (k.sign() > 0) return false;
  Real scale = max(Real(1), abs(z));
  return abs(z - k) <= ctx.tol() * scale;
}

// Bits of cancellation-free headroom needed for exp(log Gamma).
Bits working_bits(const Complex& z, const PrecisionContext& ctx) {
  double mag = std::max(1.0, std::hypot(z.re().to_double(), z.im().to_double()));
  double extra = std::log2(mag * (std::log(mag) + 2.0)) + 24.0;
  return ctx.bits + static_cast<Bits>(std::ceil(extra));
}

// Gamma for Re z >= 1/2 at the current working precision.
Complex gamma_right(const Complex& z, Bits wb) {
  Real target = Real(0.15 * static_cast<double>(wb) + 8.0);
  Complex w = z;
  Complex shift_prod(Real(1), Real(0));
  while (abs(w) < target) {
    shift_prod *= w;
    w += Complex(Real(1));
  }
  Complex lg;
  {
    // Stirling sum.
    Complex lw = log(w);
    lg = (w - Real(0.5)) * lw - w + log(2 * Real::pi()) / 2;
    Complex inv = Complex(Real(1)) / w;
    Complex inv2 = inv * inv;
    Complex powk = inv;
    Real eps = Real::pow2(-static_cast<long>(wb)) * max(Real(1), abs(lg));
    for (int k = 1; k < 100000; ++k) {
      Real bk;
      mpfr_set_q(bk.raw(), table().get(k).get_mpq_t(), MPFR_RNDN);
      Complex term = powk * (bk / (static_cast<long>(2 * k) * (2 * k - 1)));
      lg += term;
      if (abs(term) < eps) break;
      powk *= inv2;
    }
  }
  return exp(lg) / shift_prod;
}

}  // namespace

Real bernoulli_2k(int k) {
  Real r;
  mpfr_set_q(r.raw(), table().get(k).get_mpq_t(), MPFR_RNDN);
  return r;
}

Complex lgamma_right(const Complex& z, const PrecisionContext& ctx) {
  Bits wb = working_bits(z, ctx);
  Complex out;
  {
    PrecisionScope scope(wb);
    Complex zz = z;
    zz.round_to(wb);
    Real target = Real(0.15 * static_cast<double>(wb) + 8.0);
    Complex w = zz;
    Complex shift_log;
    while (abs(w) < target) {
      shift_log += log(w);
      w += Complex(Real(1));
    }
    Complex lw = log(w);
    Complex lg = (w - Real(0.5)) * lw - w + log(2 * Real::pi()) / 2;
    Complex inv = Complex(Real(1)) / w;
    Complex inv2 = inv * inv;
    Complex powk = inv;
    Real eps = Real::pow2(-static_cast<long>(wb)) * max(Real(1), abs(lg));
    for (int k = 1; k < 100000; ++k) {
      Complex term = powk * (bernoulli_2k(k) / (static_cast<long>(2 * k) * (2 * k - 1)));
      lg += term;
      if (abs(term) < eps) break;
      powk *= inv2;
    }
    out = lg - shift_log;
  }
  out.round_to(working_precision());
  return out;
}

Complex gamma(const Complex& z, const PrecisionContext& ctx) {
  if (!z.is_finite()) throw Error(ErrorKind::InvalidArgument, "gamma of non-finite argument");
  if (near_nonpositive_integer(z, ctx)) {
    throw Error(ErrorKind::PoleOfGamma, "argument " + z.to_string(12) + " is a pole");
  }
  Bits wb = working_bits(z, ctx);
  Complex out;
  {
    PrecisionScope scope(wb);
    Complex zz = z;
    zz.round_to(wb);
    if (zz.re() < Real(0.5)) {
      Complex one_minus = Complex(Real(1)) - zz;
      Complex s = sin(zz * Real::pi());
      out = Complex(Real::pi()) / (s * gamma_right(one_minus, wb));
    } else {
      out = gamma_right(zz, wb);
    }
  }
  out.round_to(working_precision());
  return out;
}

Real gamma(const Real& x, const PrecisionContext& ctx) {
  Complex g = gamma(Complex(x), ctx);
  return g.re();
}

Complex rgamma(const Complex& z, const PrecisionContext& ctx) {
  if (!z.is_finite()) throw Error(ErrorKind::InvalidArgument, "rgamma of non-finite argument");
  Bits wb = working_bits(z, ctx);
  Complex out;
  {
    PrecisionScope scope(wb);
    Complex zz = z;
    zz.round_to(wb);
    if (zz.re() < Real(0.5)) {
      if (zz.im().is_zero() && zz.re().is_integer()) {
        out = Complex(Real(0), Real(0));
      } else {
        Complex one_minus = Complex(Real(1)) - zz;
        Complex s = sin(zz * Real::pi());
        out = s * gamma_right(one_minus, wb) / Real::pi();
      }
    } else {
      out = Complex(Real(1)) / gamma_right(zz, wb);
    }
  }
  out.round_to(working_precision());
  return out;
}

}  // namespace pivlag
