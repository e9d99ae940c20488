#include "selfcheck.hpp"

#include <cstdio>
#include <functional>
#include <random>

#include "pivlag/geometry.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/piv.hpp"

using namespace pivlag;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult run(const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  CheckResult r;
  r.name = name;
  try {
    auto [ok, detail] = f();
    r.passed = ok;
    r.detail = detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

// nu drawn away from the integers.
Real draw_nu(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    double v = u(rng);
    if (std::abs(v - std::round(v)) > 0.05) return Real(v);
  }
}

}  // namespace

std::vector<CheckResult> run_selfcheck(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  out.push_back(run("szego_membership", [] {
    PrecisionContext ctx(128);
    PrecisionScope scope(128);
    double worst = 0;
    for (const Complex& z : szego_curve(256, ctx)) worst = std::max(worst, abs(szego_membership(z)).to_double());
    return std::make_pair(worst <= 1e-10, "max |membership| = " + sci(worst));
  }));

  out.push_back(run("stokes_cyclic", [&] {
    PrecisionContext ctx(160);
    PrecisionScope scope(160);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      Real nu = draw_nu(rng, -3, 3);
      Real b(std::uniform_int_distribution<int>(0, 2)(rng) * 0.5);
      PivParams params = PivParams::family(nu, b);
      for (StokesSet s : {StokesSet::Canonical, StokesSet::CaseOne, StokesSet::CaseTwo}) {
        worst = std::max(worst, abs(stokes_residual(stokes_set(s, nu, b, ctx), params, ctx)).to_double());
      }
    }
    return std::make_pair(worst <= 1e-30, "max residual = " + sci(worst));
  }));

  out.push_back(run("piv_residual", [&] {
    PrecisionContext ctx(256);
    PrecisionScope scope(256);
    double worst = 0;
    for (int i = 0; i < 6; ++i) {
      Real nu = draw_nu(rng, -2, 2);
      Real b(i % 2 == 0 ? 0.5 : 1.0);
      Real s(std::uniform_real_distribution<double>(-1, 1)(rng));
      try {
        SpecialSolution sol = special_solution(b, nu, s, ctx);
        Complex r = piv_residual(sol.point, sol.u_dd, PivParams::family(nu, b), ctx);
        worst = std::max(worst, abs(r).to_double());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::AtPole) throw;
      }
    }
    return std::make_pair(worst <= 1e-25, "max residual = " + sci(worst));
  }));

  out.push_back(run("laguerre_reduction", [] {
    double worst = 0;
    for (long n : {8L, 32L}) {
      Bits bits;
      {
        PrecisionScope probe(64);
        bits = moment_bits(ModelParams::make(Real(0.5), Real(0), Real(0.2), n), 128);
      }
      PrecisionContext ctx(bits);
      PrecisionScope scope(bits);
      ModelParams p = ModelParams::make(Real(0.5), Real(0), Real(0.2), n);
      MomentTable tbl = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
      RecurrenceTable rt = recurrence_from_moments(tbl, n, ctx);
      auto [a, b] = laguerre_exact(p);
      worst = std::max(worst, (abs(rt.a[n] - Complex(a)) / abs(a)).to_double());
      worst = std::max(worst, (abs(rt.b[n] - Complex(b)) / abs(b)).to_double());
    }
    return std::make_pair(worst <= 1e-20, "max relative error = " + sci(worst));
  }));

  out.push_back(run("hankel_oracle", [&] {
    PrecisionContext ctx(384);
    PrecisionScope scope(384);
    Real nu = draw_nu(rng, -2, 2);
    ModelParams p = ModelParams::make(nu, Real(0.5), Real(0.1), 10);
    const long n = 6;
    MomentTable tbl = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
    RecurrenceTable rt = recurrence_from_moments(tbl, n, ctx);
    auto [a, b] = hankel_ratio_oracle(tbl, n, ctx);
    double d = std::max((abs(a - rt.a[n]) / abs(a)).to_double(), (abs(b - rt.b[n]) / (1 + abs(b))).to_double());
    return std::make_pair(d <= 1e-40, "relative difference = " + sci(d));
  }));

  out.push_back(run("quadrature_vs_closed_form", [] {
    PrecisionContext ctx(128);
    PrecisionScope scope(128);
    ModelParams p = ModelParams::make(Real(0.3), Real(0.5), Real(0.2), 3);
    MomentTable q = moments(p, 5, MomentMethod::Quadrature, ctx);
    MomentTable c = moments(p, 5, MomentMethod::ClosedForm, ctx);
    double d = discrepancy(q.values, c.values).to_double();
    return std::make_pair(d <= 1e-19, "max relative difference = " + sci(d));
  }));

  out.push_back(run("level_curve", [] {
    PrecisionContext ctx(128);
    PrecisionScope scope(128);
    ModelParams p = ModelParams::make(Real(0.64), Real(0), Real(0), 25);
    Gamma0Trace tr = gamma0_trace(p, 0.02, ctx);
    double worst = 0;
    for (std::size_t i = 0; i < tr.vertices.size(); i += 7) {
      worst = std::max(worst, abs(phi_n(tr.vertices[i], p, ctx).re()).to_double());
    }
    long w = winding_number(tr.vertices, Complex(Real(0)), true);
    return std::make_pair(worst <= 1e-10 && w == 1,
                          "max |Re phi| = " + sci(worst) + ", winding = " + std::to_string(w));
  }));

  return out;
}
