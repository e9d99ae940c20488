#include <gtest/gtest.h>

#include "pivlag/errors.hpp"
#include "pivlag/pcf.hpp"
#include "pivlag/piv.hpp"
#include "support/generators.hpp"

using namespace pivlag;
using pivlag::testing::for_all;
using pivlag::testing::Gen;
using pivlag::testing::rel;

namespace {

Real R(const char* s) { return Real::parse(s); }

// Fourth-order central differences of a scalar function of s.
template <class F>
std::pair<Complex, Complex> derivatives(F&& f, const Real& s, const Real& h) {
  Complex fm2 = f(s - 2 * h), fm1 = f(s - h), f0 = f(s), fp1 = f(s + h), fp2 = f(s + 2 * h);
  Complex d1 = (fm2 - fm1 * Real(8) + fp1 * Real(8) - fp2) / (12 * h);
  Complex d2 = (-fm2 + fm1 * Real(16) - f0 * Real(30) + fp1 * Real(16) - fp2) / (12 * h * h);
  return {d1, d2};
}

}  // namespace

TEST(SpecialSolution, ReferenceValuesHalf) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  SpecialSolution sol = special_solution(R("0.5"), R("0.6"), R("0.3"), ctx);
  EXPECT_LT(rel(sol.point.u, Complex(R("1.5933631012093198114945001001499989"))), 1e-30);
  EXPECT_LT(rel(sol.point.u_prime, Complex(R("-2.1659064701377751007595066589161739"))), 1e-30);
  AuxValues aux = aux_values(sol.point, PivParams::family(R("0.6"), R("0.5")), ctx, sol.y, sol.u_dd);
  EXPECT_LT(rel(aux.K, Complex(R("0.91518257578968702914681143763247295"))), 1e-30);
}

TEST(SpecialSolution, ReferenceValuesOne) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  SpecialSolution sol = special_solution(R("1"), R("0.6"), R("0.3"), ctx);
  EXPECT_LT(rel(sol.point.u, Complex(R("1.54172937226851399812612923197298"))), 1e-30);
  EXPECT_LT(rel(sol.point.u_prime, Complex(R("0.11051342200562013571405138018801357"))), 1e-30);
  AuxValues aux = aux_values(sol.point, PivParams::family(R("0.6"), R("1")), ctx, sol.y, sol.u_dd);
  EXPECT_LT(rel(aux.K, Complex(R("-0.20213658533226137933946531965336428"))), 1e-30);
}

TEST(SpecialSolution, ReferenceValuesNegativeNu) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  SpecialSolution sol = special_solution(R("0.5"), R("-0.8"), R("0.25"), ctx);
  EXPECT_LT(rel(sol.point.u, Complex(R("0.65173010605109552587411590949011957"))), 1e-30);
  AuxValues aux = aux_values(sol.point, PivParams::family(R("-0.8"), R("0.5")), ctx, sol.y, sol.u_dd);
  EXPECT_LT(rel(aux.K, Complex(R("-0.2652419252687674689978413243681128"))), 1e-30);
}

TEST(SpecialSolution, ZeroFamilyVanishes) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  SpecialSolution sol = special_solution(Real(0), Real(0.4), Real(0.7), ctx);
  EXPECT_TRUE(sol.point.u.is_zero());
  EXPECT_TRUE(sol.point.u_prime.is_zero());
}

TEST(SpecialSolution, UnsupportedBRejected) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  try {
    special_solution(Real(0.25), Real(0.4), Real(0.7), ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedB);
  }
}

TEST(SpecialSolution, PoleDetectedAtPcfZero) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  // Zeros of D_nu(sqrt2 s) are poles of the b = 1/2 solution.
  auto zeros = pcf_real_zeros(Real(2.3), Real(-6), Real(6), ctx);
  ASSERT_FALSE(zeros.empty());
  try {
    special_solution(Real(0.5), Real(2.3), zeros[0], ctx);
    FAIL() << "expected AtPole";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AtPole);
  }
}

TEST(SpecialSolution, PivResidualProperty) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  for_all(31, 16, [&](Gen& g, int i) {
    Real b(i % 2 == 0 ? 0.5 : 1.0);
    Real nu = g.non_integer(-2.5, 2.5);
    Real x(g.uniform(-1.5, 1.5));
    try {
      SpecialSolution sol = special_solution(b, nu, x, ctx);
      Complex r = piv_residual(sol.point, sol.u_dd, PivParams::family(nu, b), ctx);
      EXPECT_LT(abs(r).to_double(), 1e-25);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AtPole);
    }
  });
}

TEST(SpecialSolution, YSatisfiesItsFirstOrderEquation) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  for (const char* b : {"0", "0.5", "1"}) {
    Real bb = R(b), nu = R("0.6"), x = R("0.3"), h = R("1e-12");
    auto y_at = [&](const Real& t) { return *special_solution(bb, nu, t, ctx).y; };
    auto [yp, ypp] = derivatives(y_at, x, h);
    SpecialSolution sol = special_solution(bb, nu, x, ctx);
    ASSERT_TRUE(sol.y.has_value());
    // y'/y = -u - 2s.
    Complex want = -(sol.point.u + Complex(2 * x));
    EXPECT_LT(rel(yp / *sol.y, want), 1e-25) << "b=" << b;
  }
}

TEST(SpecialSolution, YUnsetAtIntegerNu) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  EXPECT_FALSE(special_solution(Real(0.5), Real(-2), Real(0.1), ctx).y.has_value());
}

TEST(Aux, KMatchesDefinition) {
  PrecisionScope s(128);
  PivPoint p{R("0.2"), Complex(R("1.1")), Complex(R("-0.4"))};
  PivParams params{R("-0.5"), R("1.1")};
  // (-u' + u^2 + 2su + 4 Theta)/4.
  Complex want((R("0.4") + R("1.21") + R("0.44") - 2) / 4);
  EXPECT_LT(rel(k_value(p, params), want), 1e-30);
}

TEST(Aux, KPrimeAgreesWithFiniteDifference) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  Real b = R("0.5"), nu = R("0.6"), x = R("0.3"), h = R("1e-12");
  PivParams params = PivParams::family(nu, b);
  auto k_at = [&](const Real& t) {
    SpecialSolution sol = special_solution(b, nu, t, ctx);
    return aux_values(sol.point, params, ctx, sol.y, sol.u_dd).K;
  };
  auto [kp, kpp] = derivatives(k_at, x, h);
  SpecialSolution sol = special_solution(b, nu, x, ctx);
  AuxValues aux = aux_values(sol.point, params, ctx, sol.y, sol.u_dd);
  EXPECT_LT(rel(aux.K_prime, kp), 1e-25);
}

TEST(Aux, PsiExpansionNeedsY) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  PivPoint p{Real(0.2), Complex(Real(1.1)), Complex(Real(-0.4))};
  PivParams params{Real(-0.5), Real(1.1)};
  AuxValues aux = aux_values(p, params, ctx);
  try {
    psi_expansion(p, aux, params, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingY);
  }
}

TEST(Aux, PsiExpansionUnimodular) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  Real b = R("0.5"), nu = R("0.6"), x = R("0.3");
  PivParams params = PivParams::family(nu, b);
  SpecialSolution sol = special_solution(b, nu, x, ctx);
  AuxValues aux = aux_values(sol.point, params, ctx, sol.y, sol.u_dd);
  PsiCoefficients psi = psi_expansion(sol.point, aux, params, ctx);
  // det Psi = 1 forces tr Psi_{-1} = 0 and tr Psi_{-2} + det Psi_{-1} = 0.
  const Matrix2& a = psi.psi_m1;
  const Matrix2& m = psi.psi_m2;
  EXPECT_LT(abs(a[0][0] + a[1][1]).to_double(), 1e-60);
  Complex det_a = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  EXPECT_LT(abs(m[0][0] + m[1][1] + det_a).to_double(), 1e-60);
}

TEST(Schlesinger, TransformedSolutionSolvesShiftedEquation) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  Real b = R("0.5"), nu = R("0.6"), h = R("1e-10");
  PivParams params = PivParams::family(nu, b);
  PivParams shifted{params.theta, params.theta_inf + 1};
  auto ustar_at = [&](const Real& t) {
    SpecialSolution sol = special_solution(b, nu, t, ctx);
    AuxValues aux = aux_values(sol.point, params, ctx, sol.y, sol.u_dd);
    return schlesinger_ustar(aux, sol.point, nu, b, ctx);
  };
  for (const char* x : {"-0.4", "0.1", "0.3", "0.8"}) {
    Real xs = R(x);
    auto [d1, d2] = derivatives(ustar_at, xs, h);
    PivPoint p{xs, ustar_at(xs), d1};
    EXPECT_LT(abs(piv_residual(p, d2, shifted, ctx)).to_double(), 1e-15) << "s=" << x;
  }
}

TEST(Stokes, CyclicRelationForAllSets) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  for_all(41, 30, [&](Gen& g, int) {
    Real nu = g.non_integer(-4, 4);
    Real b = g.half_integer_b();
    PivParams params = PivParams::family(nu, b);
    for (StokesSet which : {StokesSet::Canonical, StokesSet::CaseOne, StokesSet::CaseTwo}) {
      EXPECT_LT(abs(stokes_residual(stokes_set(which, nu, b, ctx), params, ctx)).to_double(), 1e-30);
    }
  });
}

TEST(Stokes, TransformPreservesCyclicRelation) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  Real nu(0.37), b(0.5);
  PivParams params = PivParams::family(nu, b);
  StokesMultipliers t = stokes_transform(stokes_set(StokesSet::Canonical, nu, b, ctx),
                                         Complex(Real(1.7), Real(-0.3)));
  EXPECT_LT(abs(stokes_residual(t, params, ctx)).to_double(), 1e-30);
  EXPECT_THROW(stokes_transform(t, Complex(Real(0))), Error);
}

TEST(Stokes, CaseSetsFromCanonical) {
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  auto close = [](const StokesMultipliers& a, const StokesMultipliers& b) {
    Real d = max(max(abs(a.s1 - b.s1), abs(a.s2 - b.s2)), max(abs(a.s3 - b.s3), abs(a.s4 - b.s4)));
    return d.to_double();
  };
  for_all(42, 20, [&](Gen& g, int) {
    Real nu = g.non_integer(-4, 4);
    Real b = g.half_integer_b();
    StokesMultipliers c = stokes_set(StokesSet::Canonical, nu, b, ctx);
    EXPECT_LT(close(stokes_transform(c, stokes_d_case_one(nu, ctx)), stokes_set(StokesSet::CaseOne, nu, b, ctx)),
              1e-30);
    EXPECT_LT(close(stokes_transform(c, stokes_d_case_two(nu, ctx)), stokes_set(StokesSet::CaseTwo, nu, b, ctx)),
              1e-30);
  });
}

TEST(Integrator, ReproducesClosedFormSolution) {
  PrecisionContext ctx(128, 32, Real(1e-14));
  PrecisionScope s(128);
  Real b = R("0.5"), nu = R("0.6");
  PivParams params = PivParams::family(nu, b);
  SpecialSolution a = special_solution(b, nu, R("0.3"), ctx);
  Trajectory tr = ode_integrate(a.point, params, R("0.6"), ctx);
  ASSERT_FALSE(tr.pole.has_value());
  SpecialSolution e = special_solution(b, nu, R("0.6"), ctx);
  EXPECT_LT(rel(tr.points.back().u, e.point.u), 1e-9);
  EXPECT_LT(abs(tr.points.back().s - R("0.6")).to_double(), 1e-25);
}

TEST(Integrator, DetectsPoleWithUnitResidue) {
  PrecisionContext ctx(128, 32, Real(1e-14));
  PrecisionScope s(128);
  Real b = R("0.5"), nu = R("2.3");
  auto zeros = pcf_real_zeros(nu, Real(-6), Real(6), ctx);
  ASSERT_FALSE(zeros.empty());
  Real target = zeros.back();
  PivParams params = PivParams::family(nu, b);
  SpecialSolution a = special_solution(b, nu, target - Real(0.3), ctx);
  Trajectory tr = ode_integrate(a.point, params, target + Real(0.3), ctx);
  ASSERT_TRUE(tr.pole.has_value());
  EXPECT_LT(abs(tr.pole->location - target).to_double(), 1e-4);
  EXPECT_LT(std::abs(std::abs(tr.pole->residue.to_double()) - 1.0), 0.05);
}
