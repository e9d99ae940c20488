#include "pivlag/asympt.hpp"

#include <cmath>

#include "pivlag/errors.hpp"
#include "pivlag/geometry.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/piv.hpp"

namespace pivlag {

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::Generic: return "generic";
    case Branch::LhospitalMinus: return "lhospital_minus";
    case Branch::LhospitalPlus: return "lhospital_plus";
    case Branch::DegenerateKEqNu: return "degenerate_K_eq_nu";
  }
  return "unknown";
}

Prediction predict(const Real& nu, const Real& b, const Real& L, const PrecisionContext& ctx) {
  ctx.validate();
  if (nu.is_integer() && nu.sign() >= 0) throw Error(ErrorKind::ExcludedNu, "nu in N_0 is excluded");
  PrecisionScope scope(ctx.bits);
  Prediction pr;
  pr.nu = nu * 1;
  pr.b = b * 1;
  pr.L = L * 1;
  const Real sqrt2 = sqrt(Real(2));
  // Quarter-precision window for the branch tests.
  const Real wtol = pow(Real(10), Real(-static_cast<long>(ctx.bits)) / 4);

  if (b.is_zero()) {
    // u vanishes identically; K = K' = 0.
    pr.u = Real(0);
    pr.u_prime = Real(0);
    pr.K = Real(0);
    pr.K_prime = Real(0);
    pr.branch = Branch::LhospitalMinus;
    pr.a1 = nu * 1;
    pr.b1 = -sqrt2 * L;
    return pr;
  }

  SpecialSolution sol = [&] {
    try {
      return special_solution(b, nu, L, ctx);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::AtPole) {
        throw Error(ErrorKind::AtPoleOfU, "L = " + L.to_string(12) + " is a pole of u");
      }
      throw;
    }
  }();
  PivParams params = PivParams::family(nu, b);
  AuxValues aux = aux_values(sol.point, params, ctx, sol.y, sol.u_dd);
  pr.u = sol.point.u.re();
  pr.u_prime = sol.point.u_prime.re();
  pr.K = aux.K.re();
  pr.K_prime = aux.K_prime.re();
  pr.a1 = nu - pr.K;

  if (abs(pr.u) <= wtol) {
    Real four_b = 4 * b;
    if (abs(pr.u_prime + four_b) <= abs(pr.u_prime - four_b)) {
      pr.branch = Branch::LhospitalMinus;
      pr.b1 = sqrt2 * (pr.K_prime / (2 * nu) - L);
    } else {
      pr.branch = Branch::LhospitalPlus;
      pr.b1 = sqrt2 * (pr.K_prime / (2 * (nu + 2 * b)) - L);
    }
    return pr;
  }
  if (abs(pr.K - nu) <= wtol) {
    pr.branch = Branch::DegenerateKEqNu;
    pr.note = "K(L) = nu: b_n does not tend to 1 but to another constant";
    return pr;
  }
  pr.branch = Branch::Generic;
  pr.b1 = sqrt2 * (pr.K * (pr.K + 2 * b) / (pr.u * (pr.K - nu)) - L);
  Complex ustar = schlesinger_ustar(aux, sol.point, nu, b, ctx);
  pr.b1_schlesinger = -sqrt2 * (ustar.re() / 2 + L);
  return pr;
}

double order_estimate(const std::vector<double>& ns, const std::vector<double>& errors) {
  if (ns.size() != errors.size() || ns.size() < 3) {
    throw Error(ErrorKind::DegenerateFit, "need at least 3 (n, error) pairs");
  }
  const std::size_t m = ns.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(ns[i] > 0) || !(errors[i] > 0)) {
      throw Error(ErrorKind::DegenerateFit, "n and errors must be positive");
    }
    sx += std::log(ns[i]);
    sy += std::log(errors[i]);
  }
  double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double dx = std::log(ns[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (sxx <= 0) throw Error(ErrorKind::DegenerateFit, "all n are equal");
  return sxy / sxx;
}

CompareReport compare(const Real& nu, const Real& b, const Real& L, const std::vector<long>& ns,
                      const PrecisionContext& ctx, const CompareOptions& opts) {
  ctx.validate();
  CompareReport rep;
  rep.prediction = predict(nu, b, L, ctx);
  if (!rep.prediction.b1) {
    throw Error(ErrorKind::DegenerateKNu, rep.prediction.note);
  }
  rep.exact_laguerre = opts.exact_laguerre;
  if (opts.exact_laguerre && !b.is_zero()) {
    throw Error(ErrorKind::RequiresBZero, "exact Laguerre path needs b = 0");
  }
  rep.method = opts.method ? *opts.method
                           : (closed_form_capable(b) ? MomentMethod::ClosedForm : MomentMethod::Quadrature);
  Bits requested = opts.requested_bits > 0 ? opts.requested_bits : ctx.bits;
  std::vector<double> xs, ea, eb;
  for (long n : ns) {
    CompareRow row;
    row.n = n;
    Real an, bn;
    if (opts.exact_laguerre) {
      row.bits = ctx.bits;
      PrecisionScope scope(row.bits);
      ModelParams p = ModelParams::make(nu, b, L, n);
      auto [a, bb] = laguerre_exact(p);
      an = a;
      bn = bb;
    } else {
      Bits bits;
      {
        PrecisionScope probe(64);
        bits = moment_bits(ModelParams::make(nu, b, L, n), requested);
      }
      row.bits = bits;
      PrecisionContext mctx = ctx.with_bits(bits);
      PrecisionScope scope(bits);
      ModelParams p = ModelParams::make(nu, b, L, n);
      MomentTable tbl = cached_moments(p, 2 * n + 1, rep.method, mctx, opts.cache);
      RecurrenceTable rt = recurrence_from_moments(tbl, n, mctx);
      an = rt.a[static_cast<std::size_t>(n)].re();
      bn = rt.b[static_cast<std::size_t>(n)].re();
    }
    PrecisionScope scope(ctx.bits);
    row.a_n = an * 1;
    row.b_n = bn * 1;
    Real rn(n);
    row.e_a = abs(rn * row.a_n - rep.prediction.a1);
    row.e_b = abs(sqrt(rn) * (row.b_n - 1) - *rep.prediction.b1);
    xs.push_back(static_cast<double>(n));
    ea.push_back(row.e_a.to_double());
    eb.push_back(row.e_b.to_double());
    rep.rows.push_back(std::move(row));
  }
  if (xs.size() >= 3) {
    try {
      rep.slope_a = order_estimate(xs, ea);
    } catch (const Error&) {
    }
    try {
      rep.slope_b = order_estimate(xs, eb);
    } catch (const Error&) {
    }
  }
  return rep;
}

Bits zero_bits(long n) { return static_cast<Bits>(3 * n + 200); }

ZeroDistanceReport zero_distance_report(const ModelParams& p, const PrecisionContext& ctx,
                                        const MomentCache* cache) {
  ctx.validate();
  if (!p.b.is_zero()) {
    Prediction pr = predict(p.nu, p.b, p.L, ctx);
    if (pr.branch == Branch::DegenerateKEqNu) throw Error(ErrorKind::DegenerateKNu, pr.note);
  }
  ZeroDistanceReport rep;
  rep.n = p.n;
  rep.bits = std::max(zero_bits(p.n), ctx.bits);
  PrecisionContext zctx = ctx.with_bits(rep.bits);
  PrecisionScope scope(rep.bits);
  ModelParams q = ModelParams::make(p.nu, p.b, p.L, p.n);
  MomentMethod method = closed_form_capable(q.b) ? MomentMethod::ClosedForm : MomentMethod::Quadrature;
  MomentTable tbl = cached_moments(q, 2 * q.n + 1, method, zctx, cache);
  RecurrenceTable rt = recurrence_from_moments(tbl, q.n, zctx);
  std::vector<Complex> coeffs = poly_coeffs(rt, q.n, zctx);
  ZeroSet zs = zeros(coeffs, zctx);
  rep.zeros = zs.zeros;
  rep.max_rel_residual = zs.max_rel_residual;
  double sum = 0;
  for (const Complex& z : rep.zeros) {
    double d = szego_distance(z);
    rep.distances.push_back(d);
    rep.max_dist = std::max(rep.max_dist, d);
    sum += d;
  }
  if (!rep.distances.empty()) rep.mean_dist = sum / static_cast<double>(rep.distances.size());
  return rep;
}

}  // namespace pivlag
