#include "pivlag/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pivlag/errors.hpp"
#include "pivlag/quadrature.hpp"

namespace pivlag {

// ------------------------------------------------------------ Szego curve

Real szego_membership(const Complex& z) { return abs(z) * exp(1 - z.re()) - 1; }

Real szego_radius(const Real& theta) {
  // f(r) = ln r + 1 - r cos(theta) is increasing on (0, 1]; bisect then polish.
  Real c = cos(theta);
  Real lo = Real::pow2(-60), hi(1);
  auto f = [&](const Real& r) { return log(r) + 1 - r * c; };
  if (f(hi).is_zero()) return hi;
  Real tol = Real::pow2(-static_cast<long>(working_precision()) + 4);
  for (int i = 0; i < 80; ++i) {
    Real mid = (lo + hi) / 2;
    if (f(mid).sign() < 0) lo = mid;
    else hi = mid;
  }
  Real r = (lo + hi) / 2;
  for (int i = 0; i < 200; ++i) {
    Real fr = f(r);
    Real d = Real(1) / r - c;
    if (d.is_zero()) break;
    Real step = fr / d;
    r -= step;
    if (r > Real(1)) r = Real(1);
    if (abs(step) <= tol * r) break;
  }
  return r;
}

std::vector<Complex> szego_curve(long samples, const PrecisionContext& ctx) {
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 samples");
  PrecisionScope scope(ctx.bits);
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (long k = 0; k < samples; ++k) {
    Real th = 2 * Real::pi() * k / samples;
    pts.push_back(Complex::polar(szego_radius(th), th));
  }
  return pts;
}

namespace {

double szego_radius_d(double theta) {
  // In x = 1 - r: log1p(-x) + x + (1-x)(1-cos theta) = 0. This keeps the
  // double root at z = 1 well conditioned.
  double h = std::sin(0.5 * theta);
  double omc = 2 * h * h;
  auto g = [&](double x) { return std::log1p(-x) + x + (1 - x) * omc; };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 1100; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0) lo = mid;
    else hi = mid;
  }
  return 1.0 - 0.5 * (lo + hi);
}

double dist_at(std::complex<double> z, double theta) {
  return std::abs(z - std::polar(szego_radius_d(theta), theta));
}

}  // namespace

double szego_distance(const Complex& z) {
  std::complex<double> zz(z.re().to_double(), z.im().to_double());
  const int coarse = 2048;
  const double two_pi = 2 * M_PI;
  int best = 0;
  double best_d = 1e300;
  for (int k = 0; k < coarse; ++k) {
    double d = dist_at(zz, two_pi * k / coarse);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  double a = two_pi * (best - 1) / coarse;
  double b = two_pi * (best + 1) / coarse;
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = dist_at(zz, c), fd = dist_at(zz, d);
  while (b - a > 1e-13) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = dist_at(zz, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = dist_at(zz, d);
    }
  }
  return std::min({best_d, fc, fd});
}

// ---------------------------------------------------------------- branch points

BetaPoints beta_points(const ModelParams& p) {
  if (p.nu.is_integer() && p.nu.sign() >= 0) {
    throw Error(ErrorKind::ExcludedNu, "nu in N_0 is excluded");
  }
  Real rn(p.n);
  Real base = 1 + p.nu / rn;
  BetaPoints bp;
  if (p.nu.sign() > 0) {
    Real r = 2 * sqrt(p.nu / rn);
    bp.case_one = true;
    bp.beta1 = Complex(base - r);
    bp.beta2 = Complex(base + r);
  } else {
    Real r = 2 * sqrt(-p.nu / rn);
    bp.case_one = false;
    bp.beta1 = Complex(base, -r);
    bp.beta2 = Complex(base * 1, r);
  }
  return bp;
}

Complex r_n(const Complex& s, const BetaPoints& bp) {
  Complex c = (bp.beta1 + bp.beta2) / 2;
  Complex w = s - c;
  if (w.is_zero()) {
    Complex d = (bp.beta2 - bp.beta1) / 2;
    return times_i(d);
  }
  Complex q = (s - bp.beta1) * (s - bp.beta2) / (w * w);
  return w * sqrt(q);
}

namespace {

// Segment intersection test for [p1, p2] against [q1, q2].
bool segments_cross(const Complex& p1, const Complex& p2, const Complex& q1, const Complex& q2) {
  auto cross = [](const Complex& a, const Complex& b) { return a.re() * b.im() - a.im() * b.re(); };
  Complex r = p2 - p1, s = q2 - q1;
  Real den = cross(r, s);
  Complex qp = q1 - p1;
  if (abs(den) <= Real::pow2(-static_cast<long>(working_precision()) / 2) * abs(r) * abs(s)) {
    // Parallel: overlapping only when collinear with intersecting projections.
    Real rr = norm(r);
    if (rr.is_zero() || abs(cross(qp, r)) > Real::pow2(-static_cast<long>(working_precision()) / 2) * rr) {
      return false;
    }
    Real u0 = (qp.re() * r.re() + qp.im() * r.im()) / rr;
    Complex q2p = q2 - p1;
    Real u1 = (q2p.re() * r.re() + q2p.im() * r.im()) / rr;
    return max(u0, u1) >= Real(0) && min(u0, u1) <= Real(1);
  }
  Real t = cross(qp, s) / den;
  Real u = cross(qp, r) / den;
  return t >= Real(0) && t <= Real(1) && u >= Real(0) && u <= Real(1);
}

// Distance from the origin to the segment [a, b].
Real origin_distance(const Complex& a, const Complex& b) {
  Complex d = b - a;
  Real len2 = norm(d);
  if (len2.is_zero()) return abs(a);
  Real t = -(a.re() * d.re() + a.im() * d.im()) / len2;
  if (t < Real(0)) t = Real(0);
  if (t > Real(1)) t = Real(1);
  return abs(a + d * t);
}

bool route_ok(const std::vector<Complex>& pts, const BetaPoints& bp, const Real& min_origin) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Complex a = pts[i];
    if (i == 0) a = pts[0] + (pts[1] - pts[0]) * Real(1e-9);  // leave the branch point
    if (segments_cross(a, pts[i + 1], bp.beta1, bp.beta2)) return false;
    if (origin_distance(a, pts[i + 1]) < min_origin) return false;
  }
  return true;
}

std::vector<Complex> route(const Complex& start, const Complex& z, const BetaPoints& bp) {
  Real min_origin = min(Real(0.25), abs(z) / 2);
  Real up_first = z.im().sign() >= 0 ? Real(1) : Real(-1);
  std::vector<std::vector<Complex>> candidates;
  candidates.push_back({start, z});
  Real h = Real(0.6) + abs(z - start) / 2;
  for (int sgn : {1, -1}) {
    Real hh = h * up_first * sgn;
    candidates.push_back({start, (start + z) / 2 + Complex(Real(0), hh), z});
    candidates.push_back({start, start + Complex(Real(0), hh), z + Complex(Real(0), hh), z});
  }
  for (auto& c : candidates) {
    if (route_ok(c, bp, min_origin)) return c;
  }
  throw Error(ErrorKind::PathCrossesCut, "no admissible integration path to " + z.to_string(10));
}

Complex unit_vec(const Complex& z) { return z / abs(z); }

Complex half_r_over_s(const Complex& s, const BetaPoints& bp) { return r_n(s, bp) / (s * 2); }

// Integral from a branch point b0 to e, with s = b0 + (e - b0) tau^2.
Complex from_branch_point(const Complex& b0, const Complex& e, const BetaPoints& bp,
                          const PrecisionContext& ctx) {
  Complex delta = e - b0;
  ParamIntegrand g = [&](const Real& tau, std::vector<Complex>& out) {
    out.resize(1);
    Complex s = b0 + delta * (tau * tau);
    out[0] = half_r_over_s(s, bp) * delta * (2 * tau);
  };
  return integrate_interval(g, 1, Real(0), Real(1), ctx).values[0];
}

}  // namespace

Complex phi_increment(const Complex& a, const Complex& b, const BetaPoints& bp,
                      const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Complex delta = b - a;
  Real len = abs(delta);
  if (len.is_zero()) return Complex(Real(0), Real(0));
  ParamIntegrand g = [&](const Real& t, std::vector<Complex>& out) {
    out.resize(1);
    out[0] = half_r_over_s(a + delta * t, bp) * delta;
  };
  // Grade the panels geometrically toward the point closest to the pole at 0.
  Real t_star = -(a.re() * delta.re() + a.im() * delta.im()) / (len * len);
  t_star = min(max(t_star, Real(0)), Real(1));
  Real d = abs(a + delta * t_star);
  std::vector<Real> cuts{Real(0), Real(1)};
  for (Real w = Real(1) / 2; len * w > d && w > Real::pow2(-200); w /= 2) {
    if (t_star - w > Real(0)) cuts.push_back(t_star - w);
    if (t_star + w < Real(1)) cuts.push_back(t_star + w);
  }
  if (cuts.size() > 2 && t_star > Real(0) && t_star < Real(1)) cuts.push_back(t_star);
  std::sort(cuts.begin(), cuts.end());
  Complex acc;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += integrate_interval(g, 1, cuts[i], cuts[i + 1], ctx).values[0];
  }
  return acc;
}

Complex phi_n(const Complex& z, const ModelParams& p, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  BetaPoints bp = beta_points(p);
  Complex start = bp.case_one ? bp.beta1 : bp.beta2;
  if (abs(z - start) <= ctx.tol()) return Complex(Real(0), Real(0));
  if (z.is_zero()) throw Error(ErrorKind::PathCrossesCut, "phi is singular at the origin");
  // On the cut itself the value is two-sided.
  Real seg = abs(bp.beta2 - bp.beta1);
  if (abs(abs(z - bp.beta1) + abs(z - bp.beta2) - seg) <= ctx.tol() * max(Real(1), seg) &&
      abs(z - bp.beta1) > ctx.tol() && abs(z - bp.beta2) > ctx.tol()) {
    throw Error(ErrorKind::PathCrossesCut, "z lies on the branch cut");
  }
  Complex other = bp.case_one ? bp.beta2 : bp.beta1;
  if (abs(z - other) <= ctx.tol()) {
    // End on the far branch point through a pivot off the cut.
    Complex away = unit_vec(other - (bp.beta1 + bp.beta2) / 2);
    Complex pivot = other + times_i(away) * Real(bp.case_one ? 0.3 : -0.3);
    return phi_n(pivot, p, ctx) - from_branch_point(other, pivot, bp, ctx);
  }
  std::vector<Complex> pts = route(start, z, bp);
  Complex acc = from_branch_point(pts[0], pts[1], bp, ctx);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) acc += phi_increment(pts[i], pts[i + 1], bp, ctx);
  return acc;
}

// ----------------------------------------------------------------- level curve

namespace {

Complex unit(const Complex& z) { return z / abs(z); }

// Upper half of the level curve, from the negative-axis crossing to `target`.
struct HalfTrace {
  std::vector<Complex> pts;
  std::vector<Complex> tangents;
};

HalfTrace trace_upper(const Complex& x0, const Complex& phi0, const Complex& target,
                      const BetaPoints& bp, double step, const PrecisionContext& ctx,
                      const TraceOptions& opts) {
  HalfTrace out;
  Complex z = x0;
  Complex phi = phi0;
  Complex dphi = half_r_over_s(z, bp);
  // Tangent to Re phi = 0 is i conj(phi')/|phi'|; start heading up.
  Complex tan = unit(times_i(conj(dphi)));
  if (tan.im().sign() < 0) tan = -tan;
  out.pts.push_back(z);
  out.tangents.push_back(tan);
  Real h(step);
  const Real hmin(step * 1e-6);
  const Real ctol(opts.corrector_tol);
  while (out.pts.size() < opts.max_vertices) {
    if (abs(z - target) <= h * Real(1.5)) {
      out.pts.push_back(target);
      out.tangents.push_back(tan);
      return out;
    }
    bool accepted = false;
    while (!accepted) {
      Complex zp = z + tan * h;
      bool ok = false;
      const bool crosses = segments_cross(z, zp, bp.beta1, bp.beta2);
      Complex phip = crosses ? Complex() : phi + phi_increment(z, zp, bp, ctx);
      for (int it = 0; it < 12 && !crosses; ++it) {
        Complex d = half_r_over_s(zp, bp);
        Real ad = abs(d);
        if (ad.is_zero()) break;
        if (abs(phip.re()) <= ctol) {
          ok = true;
          break;
        }
        Real delta = -phip.re() / ad;
        if (abs(delta) > h / 2) break;
        Complex zn = zp + unit(conj(d)) * delta;
        if (segments_cross(zp, zn, bp.beta1, bp.beta2)) break;
        phip += phi_increment(zp, zn, bp, ctx);
        zp = zn;
      }
      if (ok) {
        Complex d = half_r_over_s(zp, bp);
        Complex nt = unit(times_i(conj(d)));
        if ((nt.re() * tan.re() + nt.im() * tan.im()).sign() < 0) nt = -nt;
        // Reject sharp turns; they signal a step that jumped branches.
        if ((nt.re() * tan.re() + nt.im() * tan.im()) < Real(0.8)) ok = false;
        if (ok) {
          z = zp;
          phi = phip;
          tan = nt;
          out.pts.push_back(z);
          out.tangents.push_back(tan);
          accepted = true;
          if (h < Real(step)) h = min(Real(step), h * 2);
        }
      }
      if (!accepted) {
        h /= 2;
        if (h < hmin) throw Error(ErrorKind::TraceStalled, "corrector failed near " + z.to_string(10));
      }
    }
  }
  throw Error(ErrorKind::TraceStalled, "vertex budget exhausted");
}

}  // namespace

Gamma0Trace gamma0_trace(const ModelParams& p, double step, const PrecisionContext& ctx,
                         const TraceOptions& opts) {
  if (!(step > 0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  PrecisionScope scope(ctx.bits);
  BetaPoints bp = beta_points(p);
  // Seed: Re phi on (-1, -1e-6), safeguarded Newton on a bisection bracket.
  Real lo(-1), hi(-1e-6);
  auto re_phi = [&](const Real& x) { return phi_n(Complex(x), p, ctx).re(); };
  Real flo = re_phi(lo), fhi = re_phi(hi);
  if (flo.sign() == fhi.sign()) {
    throw Error(ErrorKind::TraceStalled, "no sign change of Re phi on (-1, 0)");
  }
  Real x = (lo + hi) / 2;
  Complex phix;
  for (int it = 0; it < 300; ++it) {
    phix = phi_n(Complex(x), p, ctx);
    Real f = phix.re();
    if ((f.sign() > 0) == (flo.sign() > 0)) lo = x;
    else hi = x;
    Real d = half_r_over_s(Complex(x), bp).re();
    Real nx = d.is_zero() ? (lo + hi) / 2 : x - f / d;
    if (!(nx > lo && nx < hi)) nx = (lo + hi) / 2;
    Real dx = abs(nx - x);
    x = nx;
    if (dx <= ctx.tol() * 16 || abs(hi - lo) <= ctx.tol() * 16) break;
  }
  phix = phi_n(Complex(x), p, ctx);
  Complex target = bp.case_one ? bp.beta1 : bp.beta2;
  HalfTrace up = trace_upper(Complex(x), phix, target, bp, step, ctx, opts);

  Gamma0Trace tr;
  tr.crossing = x;
  tr.closed = bp.case_one;
  // Upper half runs clockwise from the crossing to the branch point. List the
  // mirror image first so the result runs conj(end) -> crossing -> end, which
  // is counterclockwise around the origin when closed.
  std::size_t m = up.pts.size();
  if (bp.case_one) {
    // beta1, upper half reversed, crossing, lower half.
    for (std::size_t i = m; i-- > 0;) {
      tr.vertices.push_back(up.pts[i]);
      tr.tangents.push_back(-up.tangents[i]);
    }
    for (std::size_t i = 1; i + 1 < m; ++i) {
      tr.vertices.push_back(conj(up.pts[i]));
      tr.tangents.push_back(conj(up.tangents[i]));
    }
  } else {
    // conj(beta) .. crossing .. beta.
    for (std::size_t i = m; i-- > 1;) {
      tr.vertices.push_back(conj(up.pts[i]));
      tr.tangents.push_back(-conj(up.tangents[i]));
    }
    for (std::size_t i = 0; i < m; ++i) {
      tr.vertices.push_back(up.pts[i]);
      tr.tangents.push_back(up.tangents[i]);
    }
  }
  return tr;
}

long winding_number(const std::vector<Complex>& poly, const Complex& z0, bool closed) {
  if (poly.size() < 2) return 0;
  double total = 0;
  std::size_t n = poly.size();
  std::size_t edges = closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const Complex& a = poly[i];
    const Complex& b = poly[(i + 1) % n];
    std::complex<double> da((a.re() - z0.re()).to_double(), (a.im() - z0.im()).to_double());
    std::complex<double> db((b.re() - z0.re()).to_double(), (b.im() - z0.im()).to_double());
    total += std::arg(db / da);
  }
  return std::lround(total / (2 * M_PI));
}

Complex measure_density(const Complex& y, const Complex& dir, const BetaPoints& bp) {
  Complex v = r_n(y, bp) / y * dir;
  // Divide by 2 pi i.
  return Complex(v.im(), -v.re()) / (2 * Real::pi());
}

}  // namespace pivlag
