#include "qe/extension.hpp"
#include "qe/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace qe;

namespace {

void BM_SweepSerial(benchmark::State& state) {
  const auto conns = random_connections(Kind::B, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(conns, Rational(1, 2)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto conns = random_connections(Kind::B, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(conns, Rational(1, 2)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const CurvatureField& a2_field() {
  static const CurvatureField field = [] {
    Term t;
    t.deg2 = 2;
    DeformationTensor phi = DeformationTensor::zero(Context::TypeA);
    phi.phi11 = AnsatzFunction(Context::TypeA, {t});
    const auto m = build_extension(AffineConnection2::make(Kind::A, {0, 0, 2, 0, 0, 1}), phi);
    return CurvatureField(m.g, m.ginv);
  }();
  return field;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto pts = probe_points4(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(a2_field(), pts));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto pts = probe_points4(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_parallel(a2_field(), pts));
}

void BM_CurvatureField(benchmark::State& state) {
  const auto m = build_extension(AffineConnection2::make(Kind::B, {-1, 0, 0, -1, 1, 0}),
                                 DeformationTensor::zero(Context::TypeB));
  for (auto _ : state) benchmark::DoNotOptimize(CurvatureField(m.g, m.ginv));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_SweepParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_EvaluateSerial)->Arg(16)->Arg(256);
BENCHMARK(BM_EvaluateParallel)->Arg(16)->Arg(256);
BENCHMARK(BM_CurvatureField);

BENCHMARK_MAIN();
