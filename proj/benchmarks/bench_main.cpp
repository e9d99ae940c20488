#include <benchmark/benchmark.h>

#include "pivlag/gamma.hpp"
#include "pivlag/geometry.hpp"
#include "pivlag/ortho.hpp"
#include "pivlag/pcf.hpp"
#include "pivlag/piv.hpp"
#include "pivlag/weight.hpp"

using namespace pivlag;

namespace {

void BM_Gamma(benchmark::State& st) {
  Bits bits = st.range(0);
  PrecisionContext ctx(bits);
  PrecisionScope s(bits);
  Complex z(Real(-3.7), Real(2.2));
  for (auto _ : st) benchmark::DoNotOptimize(gamma(z, ctx));
}
BENCHMARK(BM_Gamma)->Arg(128)->Arg(512);

void BM_Pcf(benchmark::State& st) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  Complex z(Real(st.range(0)), Real(1));
  for (auto _ : st) benchmark::DoNotOptimize(pcf_d(Real(0.35), z, ctx));
}
BENCHMARK(BM_Pcf)->Arg(1)->Arg(6)->Arg(20);

void BM_SpecialSolution(benchmark::State& st) {
  PrecisionContext ctx(256);
  PrecisionScope s(256);
  for (auto _ : st) benchmark::DoNotOptimize(special_solution(Real(0.5), Real(0.6), Real(0.3), ctx));
}
BENCHMARK(BM_SpecialSolution);

void BM_ClosedFormMoments(benchmark::State& st) {
  long n = st.range(0);
  Bits bits;
  {
    PrecisionScope probe(64);
    bits = moment_bits(ModelParams::make(Real(0.6), Real(0.5), Real(0.3), n), 128);
  }
  PrecisionContext ctx(bits);
  PrecisionScope s(bits);
  ModelParams p = ModelParams::make(Real(0.6), Real(0.5), Real(0.3), n);
  for (auto _ : st) benchmark::DoNotOptimize(moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx));
}
BENCHMARK(BM_ClosedFormMoments)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_QuadratureMoments(benchmark::State& st) {
  long n = st.range(0);
  PrecisionContext ctx(192);
  PrecisionScope s(192);
  ModelParams p = ModelParams::make(Real(0.6), Real(0.5), Real(0.3), n);
  for (auto _ : st) benchmark::DoNotOptimize(moments(p, 2 * n + 1, MomentMethod::Quadrature, ctx));
}
BENCHMARK(BM_QuadratureMoments)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Recurrence(benchmark::State& st) {
  long n = st.range(0);
  Bits bits;
  {
    PrecisionScope probe(64);
    bits = moment_bits(ModelParams::make(Real(0.6), Real(0.5), Real(0.3), n), 128);
  }
  PrecisionContext ctx(bits);
  PrecisionScope s(bits);
  ModelParams p = ModelParams::make(Real(0.6), Real(0.5), Real(0.3), n);
  MomentTable mt = moments(p, 2 * n + 1, MomentMethod::ClosedForm, ctx);
  for (auto _ : st) benchmark::DoNotOptimize(recurrence_from_moments(mt, n, ctx));
}
BENCHMARK(BM_Recurrence)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Zeros(benchmark::State& st) {
  long n = st.range(0);
  PrecisionContext ctx(3 * n + 200);
  PrecisionScope s(ctx.bits);
  ModelParams p = ModelParams::make(Real(0.5), Real(0), Real(0), n);
  RecurrenceTable rt;
  for (long k = 0; k <= n; ++k) {
    auto [a, b] = laguerre_exact_at(p, k);
    rt.a.push_back(Complex(k == 0 ? Real(0) : a));
    rt.b.push_back(Complex(b));
  }
  auto c = poly_coeffs(rt, n, ctx);
  for (auto _ : st) benchmark::DoNotOptimize(zeros(c, ctx));
}
BENCHMARK(BM_Zeros)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Gamma0Trace(benchmark::State& st) {
  PrecisionContext ctx(128);
  PrecisionScope s(128);
  ModelParams p = ModelParams::make(Real(0.64), Real(0), Real(0), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(gamma0_trace(p, 0.02, ctx));
}
BENCHMARK(BM_Gamma0Trace)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SzegoDistance(benchmark::State& st) {
  PrecisionScope s(128);
  Complex z(Real(-0.2), Real(0.5));
  for (auto _ : st) benchmark::DoNotOptimize(szego_distance(z));
}
BENCHMARK(BM_SzegoDistance);

}  // namespace

BENCHMARK_MAIN();
