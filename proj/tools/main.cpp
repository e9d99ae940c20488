// pivlag: command-line front end.
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivlag/asympt.hpp"
#include "pivlag/errors.hpp"
#include "pivlag/geometry.hpp"
#include "pivlag/moment_cache.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/pcf.hpp"
#include "pivlag/piv.hpp"
#include "selfcheck.hpp"

using namespace pivlag;
using json = nlohmann::ordered_json;

namespace {

constexpr int kArgError = 2;
constexpr int kNumericError = 3;

struct RunConfig {
  std::string nu = "0.5";
  std::string b = "0";
  std::string L = "0";
  long n = 0;
  std::vector<long> ns{64, 128, 256, 512};
  long m = -1;
  std::string prec = "auto";
  std::string method = "auto";
  std::optional<std::string> rho, eps, R;
  std::string format = "json";
  int digits = 20;
  std::string cache_dir;
  bool no_cache = false;
  bool recompute = false;
  unsigned long seed = 1;
  long samples = 512;
  double step = 0.01;
  std::string s = "0";
  std::string z_re = "0", z_im = "0";
  bool exact = false;
};

class Emitter {
 public:
  explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

  std::string num(const Real& x) const {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rg", cfg_.digits, x.raw()) < 0 || buf == nullptr) return "nan";
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  json cnum(const Complex& z) const { return json::array({num(z.re()), num(z.im())}); }

  void csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
    std::cout << os.str();
  }

  void doc(json body) {
    json out;
    out["schema"] = "1";
    for (auto& [k, v] : body.items()) out[k] = v;
    std::cout << out.dump(2) << '\n';
  }

  bool is_csv() const { return cfg_.format == "csv"; }

 private:
  const RunConfig& cfg_;
};

Real parse_real(const std::string& text, const char* name) {
  try {
    return Real::parse(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, std::string("cannot parse --") + name + " = " + text);
  }
}

std::optional<Bits> fixed_bits(const RunConfig& cfg) {
  if (cfg.prec == "auto") return std::nullopt;
  try {
    long v = std::stol(cfg.prec);
    if (v < 64) throw Error(ErrorKind::InvalidArgument, "--prec must be at least 64");
    return static_cast<Bits>(v);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "--prec must be 'auto' or an integer");
  }
}

Bits base_bits(const RunConfig& cfg) { return fixed_bits(cfg).value_or(128); }

std::optional<MomentMethod> method_of(const RunConfig& cfg) {
  if (cfg.method == "auto") return std::nullopt;
  if (cfg.method == "quadrature") return MomentMethod::Quadrature;
  if (cfg.method == "closed_form") return MomentMethod::ClosedForm;
  throw Error(ErrorKind::InvalidArgument, "--method must be auto, quadrature or closed_form");
}

MomentMethod resolve_method(const RunConfig& cfg, const Real& b) {
  auto m = method_of(cfg);
  if (m == MomentMethod::ClosedForm && !closed_form_capable(b)) {
    throw Error(ErrorKind::UnsupportedClosedForm, "closed_form needs 2b to be a nonnegative integer");
  }
  if (m) return *m;
  return closed_form_capable(b) ? MomentMethod::ClosedForm : MomentMethod::Quadrature;
}

std::optional<MomentCache> make_cache(const RunConfig& cfg) {
  if (cfg.no_cache) return std::nullopt;
  if (!cfg.cache_dir.empty()) return MomentCache(cfg.cache_dir);
  if (auto d = MomentCache::default_dir()) return MomentCache(*d);
  return std::nullopt;
}

void require_n(const RunConfig& cfg) {
  if (cfg.n <= 0) throw Error(ErrorKind::InvalidArgument, "--n must be a positive integer");
}

// ------------------------------------------------------------ subcommands

// Moments and recurrence share the precision policy: a fixed --prec runs once,
// auto starts at the loss-compensated precision and doubles until stable.
template <class F>
auto run_with_policy(const RunConfig& cfg, const ModelParams& probe, F&& compute) {
  if (auto bits = fixed_bits(cfg)) {
    PrecisionContext ctx(*bits);
    PrecisionScope scope(*bits);
    return Escalated<decltype(compute(ctx))>{compute(ctx), ctx};
  }
  Bits start = moment_bits(probe, 128);
  PrecisionScope scope(start);
  PrecisionContext ctx(start, 32, Real::pow2(-96));
  return with_escalating_precision(compute, ctx, start * 8);
}

ModelParams params_of(const RunConfig& cfg, Bits bits) {
  PrecisionScope scope(bits);
  return ModelParams::make(parse_real(cfg.nu, "nu"), parse_real(cfg.b, "b"), parse_real(cfg.L, "L"),
                           cfg.n);
}

std::optional<ContourSpec> contour_of(const RunConfig& cfg, const ModelParams& p, Bits bits, long m) {
  if (!cfg.rho && !cfg.eps && !cfg.R) return std::nullopt;
  ContourSpec c = default_contour(p, bits, m);
  if (cfg.rho) c.rho = parse_real(*cfg.rho, "rho");
  if (cfg.eps) c.eps = parse_real(*cfg.eps, "eps");
  if (cfg.R) c.R = parse_real(*cfg.R, "R");
  if (!(c.eps > Real(0) && c.eps < c.rho && c.rho < Real(1) && c.R > 1 + c.eps)) {
    throw Error(ErrorKind::InvalidArgument, "contour needs 0 < eps < rho < 1 and R > 1 + eps");
  }
  return c;
}

int cmd_moments(const RunConfig& cfg, Emitter& em) {
  require_n(cfg);
  ModelParams probe = params_of(cfg, 128);
  MomentMethod method = resolve_method(cfg, probe.b);
  long m = cfg.m >= 0 ? cfg.m : 2 * cfg.n + 1;
  auto cache = make_cache(cfg);
  bool overridden = cfg.rho || cfg.eps || cfg.R;
  auto res = run_with_policy(cfg, probe, [&](const PrecisionContext& ctx) {
    ModelParams p = params_of(cfg, ctx.bits);
    if (overridden) return moments(p, m, method, ctx, contour_of(cfg, p, ctx.bits, m)).values;
    return cached_moments(p, m, method, ctx, cache ? &*cache : nullptr, cfg.recompute).values;
  });
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < res.value.size(); ++j) {
      rows.push_back({std::to_string(j), em.num(res.value[j].re()), em.num(res.value[j].im())});
    }
    em.csv({"j", "re", "im"}, rows);
    return 0;
  }
  json mu = json::array();
  for (const auto& v : res.value) mu.push_back(em.cnum(v));
  em.doc({{"command", "moments"},
          {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"L", cfg.L}, {"n", cfg.n}}},
          {"method", method_name(method)},
          {"bits", res.ctx.bits},
          {"m", m},
          {"mu", mu}});
  return 0;
}

int cmd_recurrence(const RunConfig& cfg, Emitter& em) {
  require_n(cfg);
  ModelParams probe = params_of(cfg, 128);
  MomentMethod method = resolve_method(cfg, probe.b);
  auto cache = make_cache(cfg);
  auto res = run_with_policy(cfg, probe, [&](const PrecisionContext& ctx) {
    ModelParams p = params_of(cfg, ctx.bits);
    MomentTable tbl = cached_moments(p, 2 * cfg.n + 1, method, ctx, cache ? &*cache : nullptr, cfg.recompute);
    RecurrenceTable rt = recurrence_from_moments(tbl, cfg.n, ctx);
    std::vector<Complex> out;
    for (long k = 0; k <= cfg.n; ++k) {
      out.push_back(rt.a[static_cast<std::size_t>(k)]);
      out.push_back(rt.b[static_cast<std::size_t>(k)]);
    }
    return out;
  });
  PrecisionScope scope(res.ctx.bits);
  auto a_at = [&](long k) { return res.value[static_cast<std::size_t>(2 * k)].re(); };
  auto b_at = [&](long k) { return res.value[static_cast<std::size_t>(2 * k + 1)].re(); };
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (long k = 0; k <= cfg.n; ++k) rows.push_back({std::to_string(k), em.num(a_at(k)), em.num(b_at(k))});
    em.csv({"k", "a", "b"}, rows);
    return 0;
  }
  json a = json::array(), b = json::array();
  for (long k = 0; k <= cfg.n; ++k) {
    a.push_back(em.num(a_at(k)));
    b.push_back(em.num(b_at(k)));
  }
  json body{{"command", "recurrence"},
            {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"L", cfg.L}, {"n", cfg.n}}},
            {"method", method_name(method)},
            {"bits", res.ctx.bits},
            {"a_n", em.num(a_at(cfg.n))},
            {"b_n", em.num(b_at(cfg.n))},
            {"a", a},
            {"b", b}};
  em.doc(body);
  return 0;
}

json prediction_json(const Prediction& pr, Emitter& em) {
  json j{{"a1", em.num(pr.a1)},
         {"b1", pr.b1 ? json(em.num(*pr.b1)) : json(nullptr)},
         {"b1_schlesinger", pr.b1_schlesinger ? json(em.num(*pr.b1_schlesinger)) : json(nullptr)},
         {"branch", branch_name(pr.branch)},
         {"u", em.num(pr.u)},
         {"u_prime", em.num(pr.u_prime)},
         {"K", em.num(pr.K)},
         {"K_prime", em.num(pr.K_prime)}};
  if (!pr.note.empty()) j["note"] = pr.note;
  return j;
}

int cmd_predict(const RunConfig& cfg, Emitter& em) {
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  Prediction pr = predict(parse_real(cfg.nu, "nu"), parse_real(cfg.b, "b"), parse_real(cfg.L, "L"), ctx);
  if (em.is_csv()) {
    em.csv({"a1", "b1", "branch"}, {{em.num(pr.a1), pr.b1 ? em.num(*pr.b1) : "", branch_name(pr.branch)}});
    return 0;
  }
  em.doc({{"command", "predict"},
          {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"L", cfg.L}}},
          {"bits", bits},
          {"prediction", prediction_json(pr, em)}});
  return 0;
}

int cmd_compare(const RunConfig& cfg, Emitter& em) {
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  for (long n : cfg.ns) {
    if (n <= 0) throw Error(ErrorKind::InvalidArgument, "--ns entries must be positive");
  }
  auto cache = make_cache(cfg);
  CompareOptions opts;
  opts.exact_laguerre = cfg.exact;
  opts.method = method_of(cfg);
  opts.cache = cache ? &*cache : nullptr;
  Real b = parse_real(cfg.b, "b");
  if (opts.method == MomentMethod::ClosedForm && !closed_form_capable(b)) {
    throw Error(ErrorKind::UnsupportedClosedForm, "closed_form needs 2b to be a nonnegative integer");
  }
  CompareReport rep = compare(parse_real(cfg.nu, "nu"), b, parse_real(cfg.L, "L"), cfg.ns, ctx, opts);
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows) {
      rows.push_back({std::to_string(r.n), em.num(r.a_n), em.num(r.b_n), em.num(r.e_a), em.num(r.e_b)});
    }
    em.csv({"n", "a_n", "b_n", "e_a", "e_b"}, rows);
    return 0;
  }
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n},
                    {"bits", r.bits},
                    {"a_n", em.num(r.a_n)},
                    {"b_n", em.num(r.b_n)},
                    {"e_a", em.num(r.e_a)},
                    {"e_b", em.num(r.e_b)}});
  }
  auto slope = [&](const std::optional<double>& s) {
    if (!s) return json(nullptr);
    PrecisionScope sc(64);
    return json(em.num(Real(*s)));
  };
  em.doc({{"command", "compare"},
          {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"L", cfg.L}}},
          {"method", rep.exact_laguerre ? std::string("exact_laguerre") : method_name(rep.method)},
          {"prediction", prediction_json(rep.prediction, em)},
          {"rows", rows},
          {"order_a", slope(rep.slope_a)},
          {"order_b", slope(rep.slope_b)}});
  return 0;
}

int cmd_zeros(const RunConfig& cfg, Emitter& em) {
  require_n(cfg);
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  auto cache = make_cache(cfg);
  ZeroDistanceReport rep = zero_distance_report(params_of(cfg, bits), ctx, cache ? &*cache : nullptr);
  PrecisionScope zs(rep.bits);
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
      PrecisionScope d(64);
      rows.push_back({em.num(rep.zeros[i].re()), em.num(rep.zeros[i].im()), em.num(Real(rep.distances[i]))});
    }
    em.csv({"re", "im", "szego_distance"}, rows);
    return 0;
  }
  json zeros = json::array();
  for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
    json z = em.cnum(rep.zeros[i]);
    PrecisionScope d(64);
    z.push_back(em.num(Real(rep.distances[i])));
    zeros.push_back(z);
  }
  PrecisionScope d(64);
  em.doc({{"command", "zeros"},
          {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"L", cfg.L}, {"n", cfg.n}}},
          {"bits", rep.bits},
          {"max_dist", em.num(Real(rep.max_dist))},
          {"mean_dist", em.num(Real(rep.mean_dist))},
          {"zeros", zeros}});
  return 0;
}

int polyline_out(const std::vector<Complex>& pts, Emitter& em, const std::string& command, json extra) {
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& z : pts) rows.push_back({em.num(z.re()), em.num(z.im())});
    em.csv({"re", "im"}, rows);
    return 0;
  }
  json arr = json::array();
  for (const auto& z : pts) arr.push_back(em.cnum(z));
  json body{{"command", command}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  body["points"] = arr;
  em.doc(body);
  return 0;
}

int cmd_szego(const RunConfig& cfg, Emitter& em) {
  if (cfg.samples < 3) throw Error(ErrorKind::InvalidArgument, "--samples must be at least 3");
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  return polyline_out(szego_curve(cfg.samples, ctx), em, "szego", {{"samples", cfg.samples}});
}

int cmd_level_curve(const RunConfig& cfg, Emitter& em) {
  require_n(cfg);
  if (!(cfg.step > 0)) throw Error(ErrorKind::InvalidArgument, "--step must be positive");
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  ModelParams p = params_of(cfg, bits);
  Gamma0Trace tr = gamma0_trace(p, cfg.step, ctx);
  return polyline_out(tr.vertices, em, "level-curve",
                      {{"params", {{"nu", cfg.nu}, {"n", cfg.n}}},
                       {"closed", tr.closed},
                       {"crossing", em.num(tr.crossing)}});
}

int cmd_piv_eval(const RunConfig& cfg, Emitter& em) {
  Bits bits = fixed_bits(cfg).value_or(256);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  Real nu = parse_real(cfg.nu, "nu"), b = parse_real(cfg.b, "b"), s = parse_real(cfg.s, "s");
  SpecialSolution sol = special_solution(b, nu, s, ctx);
  PivParams params = PivParams::family(nu, b);
  AuxValues aux = aux_values(sol.point, params, ctx, sol.y, sol.u_dd);
  Complex res = piv_residual(sol.point, sol.u_dd, params, ctx);
  if (em.is_csv()) {
    em.csv({"s", "u", "u_prime", "K", "H"},
           {{em.num(s), em.num(sol.point.u.re()), em.num(sol.point.u_prime.re()), em.num(aux.K.re()),
             em.num(aux.H.re())}});
    return 0;
  }
  json body{{"command", "piv-eval"},
            {"params", {{"nu", cfg.nu}, {"b", cfg.b}, {"s", cfg.s}}},
            {"bits", bits},
            {"u", em.cnum(sol.point.u)},
            {"u_prime", em.cnum(sol.point.u_prime)},
            {"u_second", em.cnum(sol.u_dd)},
            {"K", em.cnum(aux.K)},
            {"K_prime", em.cnum(aux.K_prime)},
            {"H", em.cnum(aux.H)},
            {"y", sol.y ? em.cnum(*sol.y) : json(nullptr)},
            {"residual", em.num(abs(res))}};
  em.doc(body);
  return 0;
}

int cmd_pcf_eval(const RunConfig& cfg, Emitter& em) {
  Bits bits = base_bits(cfg);
  PrecisionScope scope(bits);
  PrecisionContext ctx(bits);
  Real nu = parse_real(cfg.nu, "nu");
  Complex z(parse_real(cfg.z_re, "z-re"), parse_real(cfg.z_im, "z-im"));
  PcfEval ev = pcf_eval(nu, z, ctx);
  if (em.is_csv()) {
    em.csv({"re", "im", "d_re", "d_im"},
           {{em.num(ev.value.re()), em.num(ev.value.im()), em.num(ev.dvalue.re()), em.num(ev.dvalue.im())}});
    return 0;
  }
  em.doc({{"command", "pcf-eval"},
          {"params", {{"nu", cfg.nu}, {"z", {cfg.z_re, cfg.z_im}}}},
          {"bits", bits},
          {"D", em.cnum(ev.value)},
          {"D_prime", em.cnum(ev.dvalue)}});
  return 0;
}

int cmd_selfcheck(const RunConfig& cfg, Emitter& em) {
  std::vector<CheckResult> results = run_selfcheck(cfg.seed);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (em.is_csv()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results) rows.push_back({r.name, r.passed ? "pass" : "fail", r.detail});
    em.csv({"check", "status", "detail"}, rows);
  } else {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"check", r.name}, {"status", r.passed ? "pass" : "fail"}, {"detail", r.detail}});
    }
    em.doc({{"command", "selfcheck"}, {"seed", cfg.seed}, {"passed", ok}, {"checks", arr}});
  }
  return ok ? 0 : 1;
}

void emit_error(const std::string& kind, const std::string& message) {
  json out;
  out["schema"] = "1";
  out["error"] = {{"kind", kind}, {"message", message}};
  std::cout << out.dump(2) << '\n';
}

bool is_argument_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnsupportedB:
    case ErrorKind::UnsupportedClosedForm:
    case ErrorKind::ExcludedNu:
    case ErrorKind::RequiresBZero:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Recurrence coefficients and zeros for a modified Laguerre weight"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sc) {
    sc->add_option("--digits", cfg.digits, "Significant digits in output")->check(CLI::Range(1, 10000));
    sc->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--prec", cfg.prec, "Working precision in bits, or auto");
  };
  auto model = [&](CLI::App* sc, bool with_n) {
    sc->add_option("--nu", cfg.nu, "nu (not in N_0)");
    sc->add_option("--b", cfg.b, "b");
    sc->add_option("--L", cfg.L, "L");
    if (with_n) sc->add_option("--n", cfg.n, "Degree")->required();
  };
  auto caching = [&](CLI::App* sc) {
    sc->add_option("--cache-dir", cfg.cache_dir, "Moment cache directory (default: $PIVLAG_CACHE_DIR)");
    sc->add_flag("--no-cache", cfg.no_cache, "Disable the moment cache");
    sc->add_flag("--recompute", cfg.recompute, "Ignore cached moments and overwrite them");
  };
  auto method = [&](CLI::App* sc) {
    sc->add_option("--method", cfg.method, "Moment method")
        ->check(CLI::IsMember({"auto", "quadrature", "closed_form"}));
  };

  auto* moments_cmd = app.add_subcommand("moments", "Moments of the weight on the loop contour");
  common(moments_cmd);
  model(moments_cmd, true);
  method(moments_cmd);
  caching(moments_cmd);
  moments_cmd->add_option("--m", cfg.m, "Highest moment index (default 2n+1)");
  moments_cmd->add_option("--rho", cfg.rho, "Loop radius");
  moments_cmd->add_option("--eps", cfg.eps, "Ray offset");
  moments_cmd->add_option("--R", cfg.R, "Truncation abscissa");

  auto* rec_cmd = app.add_subcommand("recurrence", "Recurrence coefficients a_k, b_k for k <= n");
  common(rec_cmd);
  model(rec_cmd, true);
  method(rec_cmd);
  caching(rec_cmd);

  auto* pred_cmd = app.add_subcommand("predict", "First-order large-n coefficients");
  common(pred_cmd);
  model(pred_cmd, false);

  auto* cmp_cmd = app.add_subcommand("compare", "Computed coefficients against the prediction");
  common(cmp_cmd);
  model(cmp_cmd, false);
  method(cmp_cmd);
  caching(cmp_cmd);
  cmp_cmd->add_option("--ns", cfg.ns, "Degrees")->delimiter(',');
  cmp_cmd->add_flag("--exact", cfg.exact, "Use exact Laguerre coefficients (b = 0)");

  auto* zeros_cmd = app.add_subcommand("zeros", "Zeros of pi_n with their Szego distances");
  common(zeros_cmd);
  model(zeros_cmd, true);
  caching(zeros_cmd);

  auto* szego_cmd = app.add_subcommand("szego", "Sample the Szego curve");
  common(szego_cmd);
  szego_cmd->add_option("--samples", cfg.samples, "Number of points");

  auto* lc_cmd = app.add_subcommand("level-curve", "Trace the level curve Re phi_n = 0");
  common(lc_cmd);
  model(lc_cmd, true);
  lc_cmd->add_option("--step", cfg.step, "Trace step");

  auto* piv_cmd = app.add_subcommand("piv-eval", "Closed-form Painleve IV solution and auxiliaries");
  common(piv_cmd);
  piv_cmd->add_option("--nu", cfg.nu, "nu");
  piv_cmd->add_option("--b", cfg.b, "b in {0, 1/2, 1}");
  piv_cmd->add_option("--s", cfg.s, "Evaluation point");

  auto* pcf_cmd = app.add_subcommand("pcf-eval", "Parabolic cylinder function D_nu(z)");
  common(pcf_cmd);
  pcf_cmd->add_option("--nu", cfg.nu, "Order");
  pcf_cmd->add_option("--z-re", cfg.z_re, "Re z");
  pcf_cmd->add_option("--z-im", cfg.z_im, "Im z");

  auto* self_cmd = app.add_subcommand("selfcheck", "Run the invariant suites");
  common(self_cmd);
  self_cmd->add_option("--seed", cfg.seed, "Seed for the random draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("InvalidArgument", e.what());
    return kArgError;
  }

  Emitter em(cfg);
  try {
    if (*moments_cmd) return cmd_moments(cfg, em);
    if (*rec_cmd) return cmd_recurrence(cfg, em);
    if (*pred_cmd) return cmd_predict(cfg, em);
    if (*cmp_cmd) return cmd_compare(cfg, em);
    if (*zeros_cmd) return cmd_zeros(cfg, em);
    if (*szego_cmd) return cmd_szego(cfg, em);
    if (*lc_cmd) return cmd_level_curve(cfg, em);
    if (*piv_cmd) return cmd_piv_eval(cfg, em);
    if (*pcf_cmd) return cmd_pcf_eval(cfg, em);
    if (*self_cmd) return cmd_selfcheck(cfg, em);
  } catch (const Error& e) {
    emit_error(std::string(error_name(e.kind())), e.what());
    return is_argument_error(e.kind()) ? kArgError : kNumericError;
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what());
    return kNumericError;
  }
  return kArgError;
}
