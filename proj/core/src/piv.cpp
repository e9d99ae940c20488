#include "pivlag/piv.hpp"

#include <algorithm>
#include <cmath>

#include "pivlag/errors.hpp"
#include "pivlag/gamma.hpp"
#include "pivlag/jet.hpp"
#include "pivlag/pcf.hpp"

namespace pivlag {

PivParams PivParams::family(const Real& nu, const Real& b) { return PivParams{-b, nu + b}; }

namespace {

bool tiny(const Complex& z, const PrecisionContext& ctx) { return abs(z) <= ctx.tol(); }
bool tiny(const Real& x, const PrecisionContext& ctx) { return abs(x) <= ctx.tol(); }

enum class Family { Zero, Half, One };

Family family_of(const Real& b) {
  if (b.is_zero()) return Family::Zero;
  if (b == Real(0.5)) return Family::Half;
  if (b == Real(1)) return Family::One;
  throw Error(ErrorKind::UnsupportedB, "closed forms exist only for b in {0, 1/2, 1}");
}

// A jet whose constant term is small against its first derivative marks a
// zero of the denominator, i.e. a pole of u.
void check_denominator(const jet::Series& d, const PrecisionContext& ctx, const char* what) {
  Real scale = abs(d[0]) + abs(d[1]);
  if (scale.is_zero() || abs(d[0]) <= ctx.tol() * scale) {
    throw Error(ErrorKind::AtPole, std::string(what) + " vanishes at this s");
  }
}

// Jets of the logarithmic derivative that defines u, plus the y numerator and
// denominator values.
struct FamilyJets {
  jet::Series u;
  Complex num, den;
};

FamilyJets family_jets(Family fam, const Real& nu, const Real& s, int order,
                       const PrecisionContext& ctx) {
  FamilyJets out;
  if (fam == Family::Half) {
    jet::Series f = pcf_taylor_s(nu, s, order + 1, ctx);
    jet::Series g = pcf_taylor_s(nu - 1, s, order + 1, ctx);
    check_denominator(f, ctx, "D_nu(sqrt2 s)");
    check_denominator(g, ctx, "D_{nu-1}(sqrt2 s)");
    out.u = jet::sub(jet::log_deriv(f), jet::log_deriv(g));
    out.num = g[0];
    out.den = f[0];
  } else {
    jet::Series a = pcf_taylor_s(nu, s, order + 2, ctx);
    jet::Series bp = pcf_taylor_s(nu + 1, s, order + 2, ctx);
    jet::Series c = pcf_taylor_s(nu - 1, s, order + 2, ctx);
    jet::Series w1 = jet::wronskian(a, bp);
    jet::Series w2 = jet::wronskian(c, a);
    check_denominator(w1, ctx, "W(D_nu, D_{nu+1})");
    check_denominator(w2, ctx, "W(D_{nu-1}, D_nu)");
    out.u = jet::sub(jet::log_deriv(w1), jet::log_deriv(w2));
    out.num = w2[0];
    out.den = w1[0];
  }
  return out;
}

// 2^{nu+shift} sqrt(pi) / (Gamma(nu)(e^{2 nu pi i} - 1)).
Complex y_constant(const Real& nu, const Real& shift, const PrecisionContext& ctx) {
  Complex e = Complex::polar(Real(1), 2 * nu * Real::pi()) - Complex(Real(1));
  Complex g = gamma(Complex(nu), ctx);
  return Complex(pow(Real(2), nu + shift) * sqrt(Real::pi())) / (g * e);
}

}  // namespace

Complex piv_rhs(const Real& s, const Complex& u, const Complex& up, const PivParams& params,
                const PrecisionContext& ctx) {
  Complex poly = u * u * u * Real(1.5) + u * u * (4 * s) +
                 u * (2 * (s * s + 1 - 2 * params.theta_inf));
  if (tiny(u, ctx)) {
    if (tiny(params.theta, ctx) && tiny(up, ctx)) return poly;
    throw Error(ErrorKind::DivisionNearZero, "u vanishes where the singular terms do not");
  }
  Complex sing = (up * up / 2 - Complex(8 * params.theta * params.theta)) / u;
  return sing + poly;
}

Complex piv_residual(const PivPoint& p, const Complex& u_dd, const PivParams& params,
                     const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  return u_dd - piv_rhs(p.s, p.u, p.u_prime, params, ctx);
}

std::vector<Complex> special_u_taylor(const Real& b, const Real& nu, const Real& s, int order,
                                      const PrecisionContext& ctx) {
  Family fam = family_of(b);
  PrecisionContext wctx = ctx.with_bits(ctx.bits + 32);
  std::vector<Complex> out;
  {
    PrecisionScope scope(wctx.bits);
    if (fam == Family::Zero) {
      out.assign(static_cast<std::size_t>(order) + 1, Complex(Real(0), Real(0)));
    } else {
      FamilyJets fj = family_jets(fam, nu, s, order, wctx);
      out = std::move(fj.u);
    }
  }
  for (auto& c : out) c.round_to(ctx.bits);
  return out;
}

SpecialSolution special_solution(const Real& b, const Real& nu, const Real& s,
                                 const PrecisionContext& ctx) {
  Family fam = family_of(b);
  PrecisionContext wctx = ctx.with_bits(ctx.bits + 32);
  wctx.target_rel_tol = ctx.target_rel_tol;
  SpecialSolution sol;
  {
    PrecisionScope scope(wctx.bits);
    Real ss = s;
    ss.round_to(wctx.bits);
    Real nn = nu;
    nn.round_to(wctx.bits);
    sol.point.s = ss;
    bool integer_nu = nn.is_integer();
    Complex e_s2(exp(-(ss * ss)));
    if (fam == Family::Zero) {
      sol.point.u = Complex(Real(0), Real(0));
      sol.point.u_prime = Complex(Real(0), Real(0));
      sol.u_dd = Complex(Real(0), Real(0));
      if (!integer_nu) sol.y = times_i(y_constant(nn, Real(1), wctx)) * e_s2;
    } else {
      FamilyJets fj = family_jets(fam, nn, ss, 2, wctx);
      sol.point.u = fj.u[0];
      sol.point.u_prime = fj.u[1];
      sol.u_dd = fj.u[2] * 2;
      if (!integer_nu) {
        Complex c = fam == Family::Half ? y_constant(nn, Real(1.5), wctx)
                                        : -times_i(y_constant(nn, Real(2), wctx));
        sol.y = c * fj.num / fj.den * e_s2;
      }
    }
  }
  sol.point.s.round_to(ctx.bits);
  sol.point.u.round_to(ctx.bits);
  sol.point.u_prime.round_to(ctx.bits);
  sol.u_dd.round_to(ctx.bits);
  if (sol.y) sol.y->round_to(ctx.bits);
  return sol;
}

Complex k_value(const PivPoint& p, const PivParams& params) {
  return (-p.u_prime + p.u * p.u + p.u * (2 * p.s) + Complex(4 * params.theta)) / 4;
}

AuxValues aux_values(const PivPoint& p, const PivParams& params, const PrecisionContext& ctx,
                     const std::optional<Complex>& y, const std::optional<Complex>& u_dd) {
  PrecisionScope scope(ctx.bits);
  AuxValues aux;
  aux.y = y;
  aux.K = k_value(p, params);
  Complex udd;
  if (u_dd) {
    udd = *u_dd;
  } else {
    udd = piv_rhs(p.s, p.u, p.u_prime, params, ctx);
  }
  aux.K_prime = (-udd + p.u * p.u_prime * 2 + p.u * 2 + p.u_prime * (2 * p.s)) / 4;
  Complex tail = (p.u / 2 + Complex(p.s)) * (aux.K - Complex(params.theta + params.theta_inf));
  Complex kk = aux.K * (aux.K - Complex(2 * params.theta));
  if (!tiny(p.u, ctx)) {
    aux.H = kk / p.u - tail;
  } else if (!tiny(p.u_prime, ctx)) {
    // Removable limit of K(K - 2 Theta)/u at a simple zero of u.
    Complex dkk = aux.K_prime * (aux.K * 2 - Complex(2 * params.theta));
    aux.H = dkk / p.u_prime - tail;
  } else if (tiny(kk, ctx)) {
    aux.H = -tail;
  } else {
    throw Error(ErrorKind::DivisionNearZero, "H is singular where u vanishes");
  }
  return aux;
}

PsiCoefficients psi_expansion(const PivPoint& p, const AuxValues& aux, const PivParams& params,
                              const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  if (!aux.y) throw Error(ErrorKind::MissingY, "no closed-form y attached");
  const Complex& y = *aux.y;
  if (tiny(y, ctx)) throw Error(ErrorKind::DivisionNearZero, "y vanishes");
  if (tiny(p.u, ctx)) throw Error(ErrorKind::DivisionNearZero, "u vanishes");
  const Complex& H = aux.H;
  const Complex& K = aux.K;
  const Real& th = params.theta;
  const Real& ti = params.theta_inf;
  Complex s(p.s);
  Complex k_shift = K - Complex(th + ti);
  PsiCoefficients out;
  out.psi_m1[0][0] = -H;
  out.psi_m1[0][1] = -y / 2;
  out.psi_m1[1][0] = k_shift / y;
  out.psi_m1[1][1] = H;
  out.psi_m2[0][0] = (H * H + s * H - K / 2 - Complex((th - ti - 1) * (th + ti) / 2)) / 2;
  out.psi_m2[0][1] = y / 2 * (p.u / 2 + s - H);
  out.psi_m2[1][0] = K * (K - Complex(2 * th)) / (p.u * y) - (s + H) * k_shift / y;
  out.psi_m2[1][1] = (H * H - s * H - K / 2 + Complex((th - ti + 1) * (th + ti) / 2)) / 2;
  return out;
}

Complex schlesinger_ustar(const AuxValues& aux, const PivPoint& p, const Real& nu, const Real& b,
                          const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  if (tiny(p.u, ctx)) throw Error(ErrorKind::DivisionNearZero, "u vanishes");
  Complex kn = aux.K - Complex(nu);
  if (tiny(kn, ctx)) throw Error(ErrorKind::DegenerateKNu, "K equals nu");
  return -(aux.K * (aux.K + Complex(2 * b)) * 2) / (p.u * kn);
}

// ----------------------------------------------------------------- Stokes

namespace {
Complex e_pi_i(const Real& x) { return Complex::polar(Real(1), x * Real::pi()); }
}  // namespace

StokesMultipliers stokes_set(StokesSet which, const Real& nu, const Real& b,
                             const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  StokesMultipliers m;
  switch (which) {
    case StokesSet::Canonical: {
      Real th = -b;
      Real ti = nu + b;
      m.s1 = (e_pi_i(ti - th) - e_pi_i(th - ti)) * e_pi_i(ti);
      m.s2 = e_pi_i(-th);
      m.s3 = -((e_pi_i(ti + th) - e_pi_i(-(ti + th))) * e_pi_i(-ti));
      m.s4 = -e_pi_i(2 * ti + th);
      break;
    }
    case StokesSet::CaseOne: {
      Real pi = Real::pi();
      m.s1 = e_pi_i(nu + b) * (sin((nu + 2 * b) * pi) / sin(nu * pi));
      m.s2 = (e_pi_i(nu) - e_pi_i(-nu)) * e_pi_i(b);
      m.s3 = -e_pi_i(-(nu + b));
      m.s4 = (e_pi_i(-nu) - e_pi_i(nu)) * e_pi_i(2 * nu + b);
      break;
    }
    case StokesSet::CaseTwo: {
      m.s1 = e_pi_i(-(nu + b)) - e_pi_i(nu + 3 * b);
      m.s2 = -e_pi_i(nu + b);
      m.s3 = (e_pi_i(nu) - e_pi_i(-nu)) * e_pi_i(-(2 * nu + b));
      m.s4 = e_pi_i(3 * nu + b);
      break;
    }
  }
  return m;
}

StokesMultipliers stokes_transform(const StokesMultipliers& sm, const Complex& d) {
  if (d.is_zero()) throw Error(ErrorKind::ZeroScale, "scale factor d is zero");
  return StokesMultipliers{sm.s1 * d, sm.s2 / d, sm.s3 * d, sm.s4 / d};
}

Complex stokes_residual(const StokesMultipliers& sm, const PivParams& params,
                        const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Complex one(Real(1));
  Complex lhs = (one + sm.s2 * sm.s3) * e_pi_i(2 * params.theta_inf) +
                (sm.s1 * sm.s4 + (one + sm.s3 * sm.s4) * (one + sm.s1 * sm.s2)) *
                    e_pi_i(-2 * params.theta_inf);
  Complex rhs(2 * cos(2 * Real::pi() * params.theta));
  return lhs - rhs;
}

Complex stokes_d_case_one(const Real& nu, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  return Complex(Real(1)) / (e_pi_i(nu) - e_pi_i(-nu));
}

Complex stokes_d_case_two(const Real& nu, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  return -e_pi_i(-nu);
}

// ------------------------------------------------------------- integrator

namespace {

struct State {
  Complex u, v;
};

State axpy(const State& y, const Real& h, const std::vector<State>& k,
           const std::vector<Real>& coef) {
  State out = y;
  for (std::size_t i = 0; i < coef.size(); ++i) {
    if (coef[i].is_zero()) continue;
    Real hc = h * coef[i];
    out.u += k[i].u * hc;
    out.v += k[i].v * hc;
  }
  return out;
}

Real frac(long p, long q) { return Real(p) / Real(q); }

PoleInfo fit_pole(const std::vector<PivPoint>& pts) {
  // Least squares line through (s, 1/u) over the last few samples.
  std::size_t m = std::min<std::size_t>(4, pts.size());
  std::size_t first = pts.size() - m;
  if (m < 2) {
    const PivPoint& p = pts.back();
    Real u = p.u.re();
    Real up = p.u_prime.re();
    return PoleInfo{p.s + u / up, -(u * u) / up};
  }
  Real sx(0), sy(0), sxx(0), sxy(0);
  for (std::size_t i = first; i < pts.size(); ++i) {
    Real x = pts[i].s;
    Real y = (Complex(Real(1)) / pts[i].u).re();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Real mm(static_cast<long>(m));
  Real slope = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
  Real icpt = (sy - slope * sx) / mm;
  return PoleInfo{-icpt / slope, Real(1) / slope};
}

}  // namespace

Trajectory ode_integrate(const PivPoint& start, const PivParams& params, const Real& s_end,
                         const PrecisionContext& ctx, const OdeOptions& opts) {
  PrecisionScope scope(ctx.bits);
  const std::vector<std::vector<Real>> a = {
      {},
      {frac(1, 5)},
      {frac(3, 40), frac(9, 40)},
      {frac(44, 45), frac(-56, 15), frac(32, 9)},
      {frac(19372, 6561), frac(-25360, 2187), frac(64448, 6561), frac(-212, 729)},
      {frac(9017, 3168), frac(-355, 33), frac(46732, 5247), frac(49, 176), frac(-5103, 18656)},
      {frac(35, 384), Real(0), frac(500, 1113), frac(125, 192), frac(-2187, 6784), frac(11, 84)}};
  const std::vector<Real> cs = {Real(0), frac(1, 5), frac(3, 10), frac(4, 5), frac(8, 9), Real(1), Real(1)};
  const std::vector<Real> b4 = {frac(5179, 57600), Real(0),         frac(7571, 16695),
                                frac(393, 640),    frac(-92097, 339200), frac(187, 2100),
                                frac(1, 40)};
  std::vector<Real> e(7);
  for (int i = 0; i < 7; ++i) e[i] = (i < 6 ? a[6][i] : Real(0)) - b4[i];

  auto rhs = [&](const Real& s, const State& y) {
    return State{y.v, piv_rhs(s, y.u, y.v, params, ctx)};
  };

  Trajectory traj;
  traj.points.push_back(start);
  Real s = start.s;
  State y{start.u, start.u_prime};
  Real span = s_end - s;
  if (span.is_zero()) return traj;
  int dir = span.sign();
  const Real& tol = ctx.tol();
  Real h = min(abs(span) / 16, pow(tol, Real(0.2)));
  Real hmin = Real::pow2(-static_cast<long>(ctx.bits) / 2) * max(Real(1), abs(s));
  const Real blow(opts.blowup);
  std::vector<State> k(7);
  bool first_same_as_last = false;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    Real remaining = abs(s_end - s);
    if (remaining.is_zero()) return traj;
    if (h > remaining) h = remaining;
    Real hs = h * dir;
    if (!first_same_as_last) k[0] = rhs(s, y);
    for (int i = 1; i < 7; ++i) {
      State yi = axpy(y, hs, k, a[i]);
      k[i] = rhs(s + hs * cs[i], yi);
    }
    State y5 = axpy(y, hs, k, a[6]);
    State err = axpy(State{Complex(), Complex()}, hs, k, e);
    Real su = tol + tol * max(abs(y.u), abs(y5.u));
    Real sv = tol + tol * max(abs(y.v), abs(y5.v));
    Real en = max(abs(err.u) / su, abs(err.v) / sv);
    if (!en.is_finite()) en = Real(1e10);
    if (en <= Real(1)) {
      s = (h == remaining) ? s_end : s + hs;
      y = y5;
      k[0] = k[6];
      first_same_as_last = true;
      traj.points.push_back(PivPoint{s, y.u, y.v});
      if (abs(y.u) > blow) {
        traj.pole = fit_pole(traj.points);
        return traj;
      }
    } else {
      first_same_as_last = false;
    }
    double fac = en.is_zero() ? 5.0 : 0.9 * std::pow(en.to_double(), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= Real(fac);
    if (h < hmin) throw Error(ErrorKind::StepUnderflow, "step size collapsed");
  }
  throw Error(ErrorKind::StepUnderflow, "step budget exhausted");
}

}  // namespace pivlag
