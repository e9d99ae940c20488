// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pivlag/asympt.hpp"
#include "pivlag/errors.hpp"
#include "pivlag/geometry.hpp"
#include "pivlag/moment_cache.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/piv.hpp"
#include "pivlag/weight.hpp"

using namespace pivlag;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Real R(const char* s) { return Real::parse(s); }

Real non_integer(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  for (;;) {
    double v = d(rng);
    if (std::abs(v - std::round(v)) > 0.05) return Real(v);
  }
}

// 2^{-bits/k}: a fixed fraction of the working precision.
double frac_tol(Bits bits, double k) { return std::ldexp(1.0, -static_cast<int>(bits / k)); }

std::optional<MomentCache> cache_from_env() {
  if (const char* d = std::getenv("PIVLAG_CACHE_DIR"); d && *d) return MomentCache(d);
  return std::nullopt;
}

// Five-point first and second derivatives.
template <class F>
std::pair<Complex, Complex> derivs(F&& f, const Real& x, const Real& h) {
  Complex fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  Complex d1 = (fm2 - fp2 + (fp1 - fm1) * Real(8)) / (h * 12);
  Complex d2 = ((fp1 + fm1) * Real(16) - fp2 - fm2 - f0 * Real(30)) / (h * h * 12);
  return {d1, d2};
}

Outcome laguerre_reduction() {
  Outcome o;
  double worst = 0;
  for (long n : {8L, 32L, 128L}) {
    Bits bits;
    {
      PrecisionScope probe(64);
      bits = moment_bits(ModelParams::make(Real(0.5), Real(0), Real::parse("0.2"), n), 128);
    }
    PrecisionContext ctx(bits);
    PrecisionScope s(bits);
    ModelParams p = ModelParams::make(Real(0.5), Real(0), Real::parse("0.2"), n);
    MomentTable mt = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
    RecurrenceTable rt = recurrence_from_moments(mt, n, ctx);
    Real rn(n);
    Real a = rn * Real(0.5) / (p.N * p.N);
    Real b = (rn + Real(1.5)) / p.N;
    double da = (abs(rt.a[n] - Complex(a)) / a).to_double();
    double db = (abs(rt.b[n] - Complex(b)) / b).to_double();
    worst = std::max({worst, da, db});
  }
  o.ok = worst <= 1e-20;
  o.detail = "max relative error " + sci(worst) + " (tol 1e-20)";
  return o;
}

Outcome rate_ladder(const Real& nu, const Real& b, const Real& L) {
  Outcome o;
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  auto cache = cache_from_env();
  CompareOptions opts;
  opts.requested_bits = 128;
  opts.cache = cache ? &*cache : nullptr;
  CompareReport r = compare(nu, b, L, {64, 128, 256, 512}, ctx, opts);
  bool dec = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i > 0 && !(r.rows[i].e_a < r.rows[i - 1].e_a && r.rows[i].e_b < r.rows[i - 1].e_b)) dec = false;
    os << "n=" << r.rows[i].n << " e_a=" << sci(r.rows[i].e_a.to_double()) << " e_b="
       << sci(r.rows[i].e_b.to_double()) << "; ";
  }
  auto in_band = [](const std::optional<double>& v) { return v && *v >= -0.8 && *v <= -0.3; };
  o.ok = dec && in_band(r.slope_a) && in_band(r.slope_b);
  os << "slopes " << (r.slope_a ? sci(*r.slope_a) : "n/a") << ", " << (r.slope_b ? sci(*r.slope_b) : "n/a");
  o.detail = os.str();
  return o;
}

Outcome b_zero_closed_loop() {
  Outcome o;
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  Real nu(0.5), L = R("0.2");
  CompareOptions opts;
  opts.exact_laguerre = true;
  CompareReport r = compare(nu, Real(0), L, {32, 64, 128, 256, 512}, ctx, opts);
  const Prediction& pr = r.prediction;
  double dp = std::max(abs(pr.a1 - nu).to_double(), abs(*pr.b1 + sqrt(Real(2)) * L).to_double());
  bool ok = dp <= 1e-30;
  double c = 2 * std::sqrt(2.0) * L.to_double() * nu.to_double();
  double worst_ratio = 0;
  for (const auto& row : r.rows) {
    double bound = 3 * c / std::sqrt(static_cast<double>(row.n));
    worst_ratio = std::max(worst_ratio, row.e_a.to_double() / bound);
  }
  ok = ok && worst_ratio <= 1.0;
  o.ok = ok;
  o.detail = "prediction offset " + sci(dp) + ", max e_a / bound " + sci(worst_ratio);
  return o;
}

Outcome piv_residuals() {
  Outcome o;
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(-1.5, 1.5);
  Real h = R("1e-12");
  double worst_piv = 0, worst_y = 0;
  int count = 0;
  for (const char* bstr : {"0.5", "1"}) {
    Real b = R(bstr);
    int got = 0;
    while (got < 50) {
      Real nu = non_integer(rng, -2.5, 2.5);
      Real x(xs(rng));
      try {
        SpecialSolution sol = special_solution(b, nu, x, ctx);
        PivParams params = PivParams::family(nu, b);
        worst_piv = std::max(worst_piv, abs(piv_residual(sol.point, sol.u_dd, params, ctx)).to_double());
        auto y_at = [&](const Real& t) { return *special_solution(b, nu, t, ctx).y; };
        auto [yp, ypp] = derivs(y_at, x, h);
        Complex want = -(sol.point.u + Complex(2 * x));
        worst_y = std::max(worst_y, (abs(yp / *sol.y - want) / (1 + abs(want))).to_double());
        ++got;
        ++count;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::AtPole) throw;
      }
    }
  }
  o.ok = worst_piv <= 1e-25 && worst_y <= 1e-25;
  o.detail = std::to_string(count) + " points, max PIV residual " + sci(worst_piv) + ", max y-equation residual " +
             sci(worst_y);
  return o;
}

Outcome schlesinger() {
  Outcome o;
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
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> xs(-1.2, 1.2);
  double worst = 0;
  int got = 0;
  while (got < 20) {
    Real x(xs(rng));
    try {
      auto [d1, d2] = derivs(ustar_at, x, h);
      PivPoint p{x, ustar_at(x), d1};
      worst = std::max(worst, abs(piv_residual(p, d2, shifted, ctx)).to_double());
      ++got;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AtPole && e.kind() != ErrorKind::DivisionNearZero) throw;
    }
  }
  // Generic versus Schlesinger-form b1 across both cases.
  double worst_b1 = 0;
  int compared = 0;
  for (const char* nus : {"0.6", "0.35", "-0.8", "-0.3"}) {
    for (const char* Ls : {"-0.4", "0.1", "0.25", "0.6", "0.9"}) {
      Prediction pr = predict(R(nus), b, R(Ls), ctx);
      if (!pr.b1 || !pr.b1_schlesinger) continue;
      worst_b1 = std::max(worst_b1, (abs(*pr.b1 - *pr.b1_schlesinger) / (1 + abs(*pr.b1))).to_double());
      ++compared;
    }
  }
  o.ok = worst <= 1e-15 && worst_b1 <= 1e-20 && compared > 0;
  o.detail = "max shifted-PIV residual " + sci(worst) + " at 20 points, max b1 difference " + sci(worst_b1) +
             " over " + std::to_string(compared) + " parameter points";
  return o;
}

Outcome stokes() {
  Outcome o;
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> twob(0, 2);
  double worst_cyc = 0, worst_map = 0;
  for (int i = 0; i < 50; ++i) {
    Real nu = non_integer(rng, -4, 4);
    Real b(0.5 * twob(rng));
    PivParams params = PivParams::family(nu, b);
    StokesMultipliers c = stokes_set(StokesSet::Canonical, nu, b, ctx);
    StokesMultipliers one = stokes_set(StokesSet::CaseOne, nu, b, ctx);
    StokesMultipliers two = stokes_set(StokesSet::CaseTwo, nu, b, ctx);
    for (const auto* sm : {&c, &one, &two}) {
      worst_cyc = std::max(worst_cyc, abs(stokes_residual(*sm, params, ctx)).to_double());
    }
    auto diff = [](const StokesMultipliers& x, const StokesMultipliers& y) {
      return max(max(abs(x.s1 - y.s1), abs(x.s2 - y.s2)), max(abs(x.s3 - y.s3), abs(x.s4 - y.s4))).to_double();
    };
    worst_map = std::max(worst_map, diff(stokes_transform(c, stokes_d_case_one(nu, ctx)), one));
    worst_map = std::max(worst_map, diff(stokes_transform(c, stokes_d_case_two(nu, ctx)), two));
  }
  o.ok = worst_cyc <= 1e-30 && worst_map <= 1e-30;
  o.detail = "50 draws, max cyclic residual " + sci(worst_cyc) + ", max transform mismatch " + sci(worst_map);
  return o;
}

Outcome zero_distances() {
  Outcome o;
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  auto cache = cache_from_env();
  std::ostringstream os;
  bool ok = true;
  struct Family {
    const char *nu, *b, *L;
  };
  for (Family f : {Family{"0.5", "0", "0"}, Family{"0.6", "0.5", "0.3"}}) {
    double prev = 1e300;
    os << "(nu=" << f.nu << ", b=" << f.b << ", L=" << f.L << ")";
    for (long n : {20L, 40L, 80L}) {
      ModelParams p = ModelParams::make(R(f.nu), R(f.b), R(f.L), n);
      ZeroDistanceReport r = zero_distance_report(p, ctx, cache ? &*cache : nullptr);
      if (!(r.max_dist < prev)) ok = false;
      if (n == 40 && std::string(f.b) == "0" && r.max_dist > 0.25) ok = false;
      prev = r.max_dist;
      os << " n=" << n << ":" << sci(r.max_dist);
    }
    os << "; ";
  }
  o.ok = ok;
  o.detail = os.str();
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> twob(0, 2);
  std::uniform_int_distribution<long> deg(1, 24);
  std::uniform_real_distribution<double> Ls(-0.5, 0.5);
  double worst_h = 0, worst_q = 0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    Real nu = non_integer(rng, -2, 2);
    Real b(0.5 * twob(rng));
    Real L(Ls(rng));
    long n = deg(rng);
    Bits bits;
    {
      PrecisionScope probe(64);
      bits = moment_bits(ModelParams::make(nu, b, L, n), 128);
    }
    PrecisionContext ctx(bits);
    PrecisionScope s(bits);
    ModelParams p = ModelParams::make(nu, b, L, n);
    MomentTable cf = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
    RecurrenceTable rt = recurrence_from_moments(cf, n, ctx);
    auto [ha, hb] = hankel_ratio_oracle(cf, n, ctx);
    double dh = std::max(discrepancy(rt.a[n], ha).to_double(), discrepancy(rt.b[n], hb).to_double());
    MomentTable q = moments(p, 2 * n + 1, MomentMethod::Quadrature, ctx);
    double dq = discrepancy(q.values, cf.values).to_double();
    if (dh > frac_tol(bits, 3) || dq > frac_tol(bits, 2)) ok = false;
    worst_h = std::max(worst_h, dh / frac_tol(bits, 3));
    worst_q = std::max(worst_q, dq / frac_tol(bits, 2));
  }
  o.ok = ok;
  o.detail = "20 draws, worst Chebyshev/Hankel error over 2^(-bits/3) " + sci(worst_h) +
             ", worst quadrature/closed-form error over 2^(-bits/2) " + sci(worst_q);
  return o;
}

Outcome geometry() {
  Outcome o;
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  std::ostringstream os;
  bool ok = true;
  double prev = 1e300;
  for (long n : {25L, 100L, 400L}) {
    ModelParams p = ModelParams::make(R("0.64"), Real(0), Real(0), n);
    Gamma0Trace tr = gamma0_trace(p, 0.01, ctx);
    double re = 0, dist = 0;
    for (const auto& v : tr.vertices) {
      re = std::max(re, abs(phi_n(v, p, ctx).re()).to_double());
      dist = std::max(dist, szego_distance(v));
    }
    long w = winding_number(tr.vertices, Complex(Real(0)), true);
    if (re > 1e-10 || w != 1 || !tr.closed || !(dist < prev)) ok = false;
    prev = dist;
    os << "n=" << n << ": " << tr.vertices.size() << " vertices, max|Re phi| " << sci(re) << ", winding " << w
       << ", max Szego distance " << sci(dist) << "; ";
  }
  o.ok = ok;
  o.detail = os.str();
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {"laguerre_reduction", laguerre_reduction},
      {"rate_case_one", [] { return rate_ladder(Real::parse("0.6"), Real(0.5), Real::parse("0.3")); }},
      {"rate_case_two", [] { return rate_ladder(Real::parse("-0.8"), Real(0.5), Real(0.25)); }},
      {"b_zero_closed_loop", b_zero_closed_loop},
      {"piv_residuals", piv_residuals},
      {"schlesinger", schlesinger},
      {"stokes_algebra", stokes},
      {"zero_distances", zero_distances},
      {"oracle_equivalence", oracle_equivalence},
      {"geometry", geometry},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& c : all) {
    ++idx;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("error: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %s: %s\n", o.ok ? "PASS" : "FAIL", idx, c.name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
