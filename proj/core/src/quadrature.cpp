#include "pivlag/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "pivlag/errors.hpp"

namespace pivlag {

PathSegment PathSegment::line(Complex from, Complex to) {
  PathSegment s;
  s.kind = Kind::Line;
  s.a = std::move(from);
  s.b = std::move(to);
  return s;
}

PathSegment PathSegment::arc(Complex c, Real r, Real t0, Real t1) {
  PathSegment s;
  s.kind = Kind::Arc;
  s.center = std::move(c);
  s.radius = std::move(r);
  s.start_angle = std::move(t0);
  s.end_angle = std::move(t1);
  return s;
}

Complex PathSegment::point(const Real& t) const {
  if (kind == Kind::Line) return a + (b - a) * t;
  Real th = start_angle + (end_angle - start_angle) * t;
  return center + Complex::polar(radius, th);
}

Complex PathSegment::tangent(const Real& t) const {
  if (kind == Kind::Line) return b - a;
  Real th = start_angle + (end_angle - start_angle) * t;
  return times_i(Complex::polar(radius, th)) * (end_angle - start_angle);
}

Complex PathSegment::start() const { return point(Real(0)); }
Complex PathSegment::end() const { return point(Real(1)); }

Real PathSegment::length() const {
  if (kind == Kind::Line) return abs(b - a);
  return abs(end_angle - start_angle) * radius;
}

bool path_is_connected(const Path& path, Bits bits) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    Complex p = path[i - 1].end();
    Complex q = path[i].start();
    Real scale = max(Real(1), max(abs(p), abs(q)));
    if (abs(p - q) > Real::pow2(-static_cast<long>(bits)) * scale * 16) return false;
  }
  return true;
}

// ------------------------------------------------------------------ rules

namespace {

std::mutex g_rule_mu;
std::map<std::pair<int, Bits>, std::unique_ptr<GaussRule>> g_rules;

// P_p(x) and P_p'(x) by the three-term recurrence.
void legendre(int p, const Real& x, Real& val, Real& der) {
  Real p0(1), p1 = x;
  for (int k = 2; k <= p; ++k) {
    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / static_cast<long>(k);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  val = p1;
  der = (p * (x * p1 - p0)) / (x * x - 1);
}

std::unique_ptr<GaussRule> build_rule(int p) {
  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(p);
  rule->weights.resize(p);
  const Bits bits = working_precision();
  Real tol = Real::pow2(-static_cast<long>(bits) + 4);
  int half = (p + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double guess = std::cos(M_PI * (i + 0.75) / (p + 0.5));
    Real x(guess), val, der;
    for (int it = 0; it < 200; ++it) {
      legendre(p, x, val, der);
      Real dx = val / der;
      x -= dx;
      if (abs(dx) <= tol) {
        legendre(p, x, val, der);
        break;
      }
    }
    Real w = Real(2) / ((1 - x * x) * der * der);
    rule->nodes[i] = x;
    rule->weights[i] = w;
    rule->nodes[p - 1 - i] = -x;
    rule->weights[p - 1 - i] = w;
  }
  if (p % 2 == 1) rule->nodes[p / 2] = Real(0);
  return rule;
}

int default_order(Bits bits) {
  int p = static_cast<int>(bits / 6);
  if (p < 10) p = 10;
  return p;
}

struct Panel {
  Real t0, t1;
  int depth;
};

// Evaluate the p-point rule on [t0, t1]; also accumulates the L1 size.
void apply_rule(const GaussRule& rule, const ParamIntegrand& g, std::size_t m, const Real& t0,
                const Real& t1, std::vector<Complex>& sum, std::vector<Real>& l1,
                std::vector<Complex>& buf) {
  Real half = (t1 - t0) / 2;
  Real mid = (t1 + t0) / 2;
  sum.assign(m, Complex(Real(0), Real(0)));
  l1.assign(m, Real(0));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    Real t = mid + half * rule.nodes[i];
    g(t, buf);
    for (std::size_t j = 0; j < m; ++j) {
      sum[j] += buf[j] * rule.weights[i];
      l1[j] += abs(buf[j]) * rule.weights[i];
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    sum[j] *= half;
    l1[j] *= abs(half);
  }
}

// Pairwise sum of v[lo..hi) in index order.
Complex pairwise(const std::vector<Complex>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  if (hi == lo) return Complex(Real(0), Real(0));
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise(v, lo, mid) + pairwise(v, mid, hi);
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  if (points < 1) throw Error(ErrorKind::InvalidArgument, "rule needs at least one point");
  std::lock_guard<std::mutex> lock(g_rule_mu);
  auto key = std::make_pair(points, working_precision());
  auto it = g_rules.find(key);
  if (it == g_rules.end()) it = g_rules.emplace(key, build_rule(points)).first;
  return *it->second;
}

VecQuadResult integrate_interval(const ParamIntegrand& g, std::size_t m, const Real& t0,
                                 const Real& t1, const PrecisionContext& ctx,
                                 const QuadOptions& opts) {
  PrecisionScope scope(ctx.bits);
  int p = opts.order > 0 ? opts.order : default_order(ctx.bits);
  const GaussRule& coarse = gauss_legendre(p);
  const GaussRule& fine = gauss_legendre(2 * p);
  Real total_len = abs(t1 - t0);
  VecQuadResult out;
  out.values.assign(m, Complex(Real(0), Real(0)));
  out.errors.assign(m, Real(0));
  if (total_len.is_zero() || m == 0) return out;

  std::vector<std::vector<Complex>> accepted(m);
  std::vector<Real> scale(m, Real(0));
  std::vector<Complex> qc, qf, buf(m);
  std::vector<Real> l1c, l1f;
  std::vector<Panel> stack;
  // Depth-first with the left half on top, so panels are accepted in path order.
  stack.push_back({t0 * 1, t1 * 1, 0});
  std::size_t evaluated = 0;
  while (!stack.empty()) {
    Panel pan = std::move(stack.back());
    stack.pop_back();
    if (++evaluated > opts.max_panels) {
      throw Error(ErrorKind::NoConvergence, "panel cap reached in path quadrature");
    }
    apply_rule(coarse, g, m, pan.t0, pan.t1, qc, l1c, buf);
    apply_rule(fine, g, m, pan.t0, pan.t1, qf, l1f, buf);
    Real frac = abs(pan.t1 - pan.t0) / total_len;
    bool ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (!qf[j].is_finite()) throw Error(ErrorKind::NoConvergence, "non-finite integrand value");
      if (l1f[j] > scale[j]) scale[j] = l1f[j];
    }
    std::vector<Real> errs(m);
    for (std::size_t j = 0; j < m; ++j) {
      errs[j] = abs(qf[j] - qc[j]);
      if (errs[j] > ctx.tol() * scale[j] * frac) ok = false;
    }
    if (ok || pan.depth >= 60) {
      if (!ok) throw Error(ErrorKind::NoConvergence, "panel subdivision depth exhausted");
      for (std::size_t j = 0; j < m; ++j) {
        accepted[j].push_back(std::move(qf[j]));
        out.errors[j] += errs[j];
      }
      continue;
    }
    Real mid = (pan.t0 + pan.t1) / 2;
    stack.push_back({mid, pan.t1, pan.depth + 1});
    stack.push_back({pan.t0, mid, pan.depth + 1});
  }
  for (std::size_t j = 0; j < m; ++j) out.values[j] = pairwise(accepted[j], 0, accepted[j].size());
  out.panels = accepted.empty() ? 0 : accepted[0].size();
  return out;
}

VecQuadResult integrate_path(const VectorIntegrand& f, std::size_t m, const Path& path,
                             const PrecisionContext& ctx, const QuadOptions& opts) {
  PrecisionScope scope(ctx.bits);
  VecQuadResult out;
  out.values.assign(m, Complex(Real(0), Real(0)));
  out.errors.assign(m, Real(0));
  std::vector<std::vector<Complex>> parts(m);
  std::vector<Complex> buf(m);
  for (const PathSegment& seg : path) {
    ParamIntegrand g = [&](const Real& t, std::vector<Complex>& res) {
      Complex z = seg.point(t);
      Complex dz = seg.tangent(t);
      f(z, buf);
      res.resize(m);
      for (std::size_t j = 0; j < m; ++j) res[j] = buf[j] * dz;
    };
    VecQuadResult r = integrate_interval(g, m, Real(0), Real(1), ctx, opts);
    for (std::size_t j = 0; j < m; ++j) {
      parts[j].push_back(std::move(r.values[j]));
      out.errors[j] += r.errors[j];
    }
    out.panels += r.panels;
  }
  for (std::size_t j = 0; j < m; ++j) out.values[j] = pairwise(parts[j], 0, parts[j].size());
  return out;
}

QuadResult integrate_path(const ScalarIntegrand& f, const Path& path, const PrecisionContext& ctx,
                          const QuadOptions& opts) {
  VectorIntegrand vf = [&](const Complex& z, std::vector<Complex>& out) {
    out.resize(1);
    out[0] = f(z);
  };
  VecQuadResult r = integrate_path(vf, 1, path, ctx, opts);
  QuadResult q;
  q.value = std::move(r.values[0]);
  q.error = std::move(r.errors[0]);
  q.panels = r.panels;
  return q;
}

}  // namespace pivlag
