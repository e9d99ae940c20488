#include <gtest/gtest.h>

#include "pivlag/errors.hpp"
#include "pivlag/pcf.hpp"
#include "support/generators.hpp"

using namespace pivlag;
using pivlag::testing::for_all;
using pivlag::testing::Gen;
using pivlag::testing::rel;

namespace {

struct PcfCase {
  double nu, re, im;
  const char* want_re;
  const char* want_im;
};

// Independent 60-digit reference values.
const PcfCase kCases[] = {
    {0.7, 1.3, 0, "0.82549885476810855282766848454778847", "0"},
    {-2.5, 3, 2, "-0.004574114632921114928348765051268286", "0.0087428705741201495291290980031914766"},
    {3.7, -4, 1, "4.3769198887603930356345697996303717", "-0.16149295675741169894318293971862267"},
    {0.3, 12, 5, "9.564849651086121617803719694084633e-15", "2.5930859708396114423699469067800001e-13"},
    {1.5, -10, 0, "252790932.29498383727178874179820882", "0"},
    {-0.5, 0, 20, "4.2542930554669733329134447924144636e+42", "-4.2542930554669733329134447924144636e+42"},
    {0.6, -15, -3, "2418419541445864039768.257035262923", "463889443101360500695.07799641937333"},
    {2.3, 25, 0, "2.2683447381067522903794567442200365e-65", "0"},
    {-1.2, -30, 10, "2.9274929981363718441944927503655121e+87", "2.6306879567218976204181784706488052e+87"},
};

}  // namespace

TEST(Pcf, ReferenceValuesAcrossRegimes) {
  PrecisionContext ctx(160);
  PrecisionScope s(160);
  for (const auto& c : kCases) {
    Complex got = pcf_d(Real(c.nu), Complex(Real(c.re), Real(c.im)), ctx);
    Complex want(Real::parse(c.want_re), Real::parse(c.want_im));
    EXPECT_LT(rel(got, want), 1e-30) << "nu=" << c.nu << " z=" << c.re << "+" << c.im << "i";
  }
}

TEST(Pcf, HermiteAtIntegerOrder) {
  // D_2(z) = (z^2 - 1) e^{-z^2/4}.
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  Complex z(Real(0.7), Real(-0.4));
  Complex want = (z * z - Complex(Real(1))) * exp(-(z * z) / Real(4));
  EXPECT_LT(rel(pcf_d(Real(2), z, ctx), want), 1e-35);
}

TEST(Pcf, RealArgumentGivesRealValue) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  Complex v = pcf_d(Real(-1.3), Complex(Real(-2.2)), ctx);
  EXPECT_TRUE(v.im().is_zero());
}

TEST(Pcf, SatisfiesWeberEquationAndRecurrence) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  for_all(21, 12, [&](Gen& g, int) {
    Real nu(g.uniform(-3, 3));
    Complex z = g.complex_in_box(-6, 6);
    // D_{nu+1} - z D_nu + nu D_{nu-1} = 0.
    Complex d0 = pcf_d(nu, z, ctx), dm = pcf_d(nu - 1, z, ctx), dp = pcf_d(nu + 1, z, ctx);
    Real scale = abs(dp) + abs(z * d0) + abs(dm * nu);
    EXPECT_LT((abs(dp - z * d0 + dm * nu) / scale).to_double(), 1e-40);
    // Second derivative from the Taylor jet against the equation.
    PcfEval ev = pcf_eval(nu, z, ctx);
    EXPECT_LT(rel(ev.dvalue, pcf_d_prime(nu, z, ctx)), 1e-40);
  });
}

TEST(Pcf, SwitchRadiusOverlap) {
  // The series and the asymptotic expansion agree where both are valid.
  PrecisionScope s(128);
  Real nu(0.35);
  Complex z(Real(14), Real(2));
  Complex asym;
  ASSERT_TRUE(detail::pcf_asymptotic(nu, z, 128, asym));
  Complex series = detail::pcf_series(nu, z, 128);
  EXPECT_LT(rel(series, asym), 1e-30);
  EXPECT_GE(detail::pcf_switch_radius(nu), 8.0);
}

TEST(Pcf, TaylorJetMatchesValues) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  Real nu(0.45), s0(0.3), h(0.01);
  std::vector<Complex> c = pcf_taylor_s(nu, s0, 40, ctx);
  Complex sum;
  Real hp(1);
  for (const auto& ck : c) {
    sum += ck * hp;
    hp *= h;
  }
  Complex want = pcf_d(nu, Complex(sqrt(Real(2)) * (s0 + h)), ctx);
  EXPECT_LT(rel(sum, want), 1e-45);
}

TEST(Pcf, WronskianClosedForm) {
  // W_s(D_{nu-1}(sqrt2 s), D_nu(sqrt2 s)) versus direct derivatives.
  PrecisionContext ctx(160);
  PrecisionScope s(160);
  Real nu(0.6), x(0.4);
  Real r2 = sqrt(Real(2));
  Complex z(r2 * x);
  Complex f = pcf_d(nu - 1, z, ctx), g = pcf_d(nu, z, ctx);
  Complex fp = pcf_d_prime(nu - 1, z, ctx) * r2, gp = pcf_d_prime(nu, z, ctx) * r2;
  EXPECT_LT(rel(pcf_wronskian(nu, x, ctx), f * gp - fp * g), 1e-40);
}

TEST(Pcf, RealZeros) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  auto z = pcf_real_zeros(Real(2.3), Real(-10), Real(10), ctx);
  EXPECT_EQ(z.size(), 3u);
  for (const auto& x : z) {
    Complex w(sqrt(Real(2)) * x);
    // Newton step size, i.e. the distance to the true zero, against the 2^-96 default tolerance.
    EXPECT_LT(abs(pcf_d(Real(2.3), w, ctx) / pcf_d_prime(Real(2.3), w, ctx)).to_double(), 1e-26);
  }
  auto one = pcf_real_zeros(Real(1), Real(-5), Real(5), ctx);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_LT(abs(one[0]).to_double(), 1e-30);
  EXPECT_TRUE(pcf_real_zeros(Real(-0.5), Real(-8), Real(8), ctx).empty());
}
