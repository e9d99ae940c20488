#include <gtest/gtest.h>

#include "pivlag/asympt.hpp"
#include "pivlag/errors.hpp"
#include "pivlag/geometry.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/weight.hpp"
#include "support/generators.hpp"

using namespace pivlag;
using pivlag::testing::for_all;
using pivlag::testing::Gen;
using pivlag::testing::rel;

namespace {

MomentTable raw_table(std::vector<Complex> mu) {
  MomentTable t;
  t.values = std::move(mu);
  return t;
}

}  // namespace

TEST(Laguerre, ExactReference) {
  PrecisionScope s(160);
  ModelParams p = ModelParams::make(Real(0.5), Real(0), Real::parse("0.2"), 100);
  auto [a, b] = laguerre_exact(p);
  EXPECT_LT(rel(a * 100, Real::parse("0.47287202134860219943765883955744063")), 1e-33);
  EXPECT_LT(rel(b, (Real(201) + p.alpha) / p.N), 1e-40);
  ModelParams q = ModelParams::make(Real(0.5), Real(0.5), Real::parse("0.2"), 100);
  try {
    laguerre_exact(q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RequiresBZero);
  }
}

TEST(Recurrence, ReproducesLaguerreFromMoments) {
  for_all(71, 6, [](Gen& g, int) {
    Real nu = g.non_integer(-2, 2);
    Real L(g.uniform(-0.5, 0.5));
    long n = g.integer(2, 16);
    ModelParams probe;
    {
      PrecisionScope s(64);
      probe = ModelParams::make(nu, Real(0), L, n);
    }
    Bits bits = moment_bits(probe, 128);
    PrecisionContext ctx(bits);
    PrecisionScope s(bits);
    ModelParams p = ModelParams::make(nu, Real(0), L, n);
    MomentTable mt = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
    RecurrenceTable rt = recurrence_from_moments(mt, n, ctx);
    for (long k = 1; k <= n; ++k) {
      auto [a, b] = laguerre_exact_at(p, k);
      EXPECT_LT(rel(rt.a[k], Complex(a)), 1e-30) << "k=" << k;
      EXPECT_LT(rel(rt.b[k], Complex(b)), 1e-30) << "k=" << k;
    }
  });
}

TEST(Recurrence, ChebyshevAgreesWithHankel) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  ModelParams p = ModelParams::make(Real::parse("0.3"), Real(0.5), Real::parse("0.1"), 6);
  MomentTable mt = moments(p, 13, MomentMethod::ClosedForm, ctx);
  RecurrenceTable rt = recurrence_from_moments(mt, 6, ctx);
  for (long k = 1; k <= 6; ++k) {
    auto [a, b] = hankel_ratio_oracle(mt, k, ctx);
    EXPECT_LT(rel(rt.a[k], a), 1e-40);
    EXPECT_LT(rel(rt.b[k], b), 1e-40);
  }
}

TEST(Recurrence, DegreeOneFormula) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  std::vector<Complex> mu = {Complex(Real(2)), Complex(Real(1), Real(1)), Complex(Real(3)), Complex(Real(-1), Real(2))};
  RecurrenceTable rt = recurrence_from_moments(raw_table(mu), 1, ctx);
  EXPECT_LT(rel(rt.b[0], mu[1] / mu[0]), 1e-35);
  EXPECT_LT(rel(rt.a[1], (mu[0] * mu[2] - mu[1] * mu[1]) / (mu[0] * mu[0])), 1e-35);
}

TEST(Recurrence, ScalingInvariance) {
  // Scaling every moment by c leaves the coefficients unchanged.
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  ModelParams p = ModelParams::make(Real::parse("0.7"), Real(1), Real::parse("-0.2"), 5);
  MomentTable mt = moments(p, 11, MomentMethod::ClosedForm, ctx);
  MomentTable sc = mt;
  Complex c(Real(-3.5), Real(1.25));
  for (auto& v : sc.values) v *= c;
  RecurrenceTable a = recurrence_from_moments(mt, 5, ctx);
  RecurrenceTable b = recurrence_from_moments(sc, 5, ctx);
  EXPECT_LT(discrepancy(a.a, b.a).to_double(), 1e-45);
  EXPECT_LT(discrepancy(a.b, b.b).to_double(), 1e-45);
}

TEST(Recurrence, ExistenceFailureOnPointMass) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  std::vector<Complex> mu(6, Complex(Real(1)));
  try {
    recurrence_from_moments(raw_table(mu), 2, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExistenceFailure);
  }
  EXPECT_THROW(recurrence_from_moments(raw_table(mu), 3, ctx), Error);
}

TEST(Poly, LowDegreeCoefficients) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  RecurrenceTable rt;
  rt.a = {Complex(Real(0)), Complex(Real(2)), Complex(Real(0))};
  rt.b = {Complex(Real(1)), Complex(Real(3)), Complex(Real(0))};
  auto c1 = poly_coeffs(rt, 1, ctx);
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_LT(rel(c1[0], Complex(Real(-1))), 1e-35);
  // (z - 3)(z - 1) - 2 = z^2 - 4z + 1.
  auto c2 = poly_coeffs(rt, 2, ctx);
  ASSERT_EQ(c2.size(), 3u);
  EXPECT_LT(rel(c2[0], Complex(Real(1))), 1e-35);
  EXPECT_LT(rel(c2[1], Complex(Real(-4))), 1e-35);
  EXPECT_LT(rel(c2[2], Complex(Real(1))), 1e-35);
}

TEST(Poly, LaguerreCoefficients) {
  // Monic Laguerre: c_k = (-1)^{n-k} C(n, k) (n+alpha)!/(k+alpha)! / N^{n-k}.
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  ModelParams p = ModelParams::make(Real::parse("0.4"), Real(0), Real::parse("0.3"), 7);
  RecurrenceTable rt;
  rt.a.assign(8, Complex(Real(0)));
  rt.b.assign(8, Complex(Real(0)));
  for (long k = 0; k <= 7; ++k) {
    auto [a, b] = laguerre_exact_at(p, k);
    rt.a[k] = Complex(a);
    rt.b[k] = Complex(b);
  }
  rt.a[0] = Complex(Real(0));
  auto c = poly_coeffs(rt, 7, ctx);
  Real binom(1), ratio(1), np(1);
  for (long k = 7; k >= 0; --k) {
    Real want = binom * ratio / np;
    if ((7 - k) % 2) want = -want;
    EXPECT_LT(rel(c[k], Complex(want)), 1e-40) << "k=" << k;
    // Step to k-1.
    binom = binom * Real(k) / Real(8 - k);
    ratio = ratio * (Real(k) + p.alpha);
    np = np * p.N;
  }
}

TEST(Zeros, Quadratic) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  ZeroSet zs = zeros({Complex(Real(-1)), Complex(Real(0)), Complex(Real(1))}, ctx);
  ASSERT_EQ(zs.zeros.size(), 2u);
  double lo = std::min(zs.zeros[0].re().to_double(), zs.zeros[1].re().to_double());
  double hi = std::max(zs.zeros[0].re().to_double(), zs.zeros[1].re().to_double());
  EXPECT_NEAR(lo, -1.0, 1e-30);
  EXPECT_NEAR(hi, 1.0, 1e-30);
  EXPECT_LT(zs.max_rel_residual.to_double(), 1e-30);
}

TEST(Zeros, RealCoefficientsGiveConjugatePairs) {
  PrecisionContext ctx(160);
  PrecisionScope s(160);
  for_all(72, 5, [&](Gen& g, int) {
    long n = g.integer(3, 12);
    std::vector<Complex> c(n + 1);
    for (long k = 0; k < n; ++k) c[k] = Complex(Real(g.uniform(-2, 2)));
    c[n] = Complex(Real(1));
    ZeroSet zs = zeros(c, ctx);
    ASSERT_EQ(static_cast<long>(zs.zeros.size()), n);
    for (const auto& z : zs.zeros) {
      Real best(1e9);
      for (const auto& w : zs.zeros) best = min(best, abs(w - conj(z)));
      EXPECT_LT(best.to_double(), 1e-25);
    }
    EXPECT_LT(zs.max_rel_residual.to_double(), 1e-35);
  });
}

TEST(Orthogonality, PolynomialAnnihilatesLowerMoments) {
  for_all(73, 4, [](Gen& g, int) {
    Real nu = g.non_integer(-2, 2);
    Real b = g.half_integer_b();
    long n = g.integer(2, 10);
    ModelParams probe;
    {
      PrecisionScope s(64);
      probe = ModelParams::make(nu, b, Real::parse("0.1"), n);
    }
    Bits bits = moment_bits(probe, 128);
    PrecisionContext ctx(bits);
    PrecisionScope s(bits);
    ModelParams p = ModelParams::make(nu, b, Real::parse("0.1"), n);
    MomentTable mt = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
    RecurrenceTable rt = recurrence_from_moments(mt, n, ctx);
    auto c = poly_coeffs(rt, n, ctx);
    for (long j = 0; j < n; ++j) {
      Complex acc;
      Real scale(0);
      for (long k = 0; k <= n; ++k) {
        Complex t = c[k] * mt.values[k + j];
        acc += t;
        scale += abs(t);
      }
      EXPECT_LT((abs(acc) / scale).to_double(), 1e-30) << "j=" << j;
    }
  });
}

TEST(Zeros, LaguerreZerosNearSzegoCurve) {
  PrecisionContext ctx(zero_bits(40));
  PrecisionScope s(ctx.bits);
  ModelParams p = ModelParams::make(Real(0.5), Real(0), Real(0), 40);
  RecurrenceTable rt;
  rt.a.assign(41, Complex(Real(0)));
  rt.b.assign(41, Complex(Real(0)));
  for (long k = 0; k <= 40; ++k) {
    auto [a, b] = laguerre_exact_at(p, k);
    rt.a[k] = Complex(a);
    rt.b[k] = Complex(b);
  }
  rt.a[0] = Complex(Real(0));
  ZeroSet zs = zeros(poly_coeffs(rt, 40, ctx), ctx);
  ASSERT_EQ(zs.zeros.size(), 40u);
  for (const auto& z : zs.zeros) EXPECT_LT(szego_distance(z), 0.25);
}
