#include <benchmark/benchmark.h>

#include "tnormlab/analysis.hpp"
#include "tnormlab/classify.hpp"
#include "tnormlab/dsl.hpp"
#include "tnormlab/tnorm.hpp"

using namespace tnormlab;

namespace {

TNormSpec family(int which) {
  switch (which) {
    case 0: return TNormSpec::product();
    case 1: return TNormSpec::schweizer_sklar(2.0);
    case 2: return TNormSpec::schweizer_sklar(-2.0);
    default: return TNormSpec::cshelf(0.5);
  }
}

void BM_EvalTnorm(benchmark::State& state) {
  const TNormSpec spec = family(static_cast<int>(state.range(0)));
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_tnorm(spec, UnitValue(x), UnitValue(0.7)));
    x = x < 0.9 ? x + 1e-3 : 0.3;
  }
  state.SetLabel(spec.to_string());
}
BENCHMARK(BM_EvalTnorm)->DenseRange(0, 3);

void BM_EvalExpr(benchmark::State& state) {
  const dsl::Expression e = dsl::parse("(x^(-1)+y^(-1)-1)^(-1)");
  for (auto _ : state) benchmark::DoNotOptimize(dsl::evaluate(e, 0.4, 0.6));
}
BENCHMARK(BM_EvalExpr);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse("max(x + x*y - 1, 0) * min(x^2, y/3)"));
}
BENCHMARK(BM_Parse);

void BM_GphSweep(benchmark::State& state) {
  const TNormSpec spec = family(static_cast<int>(state.range(0)));
  const CompanionF f = CompanionF::catalog(spec);
  GridSpec grid;
  grid.points = 51;
  grid.samples = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(check_gph(spec, f, grid));
  state.SetLabel(spec.to_string());
}
BENCHMARK(BM_GphSweep)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Axioms(benchmark::State& state) {
  const TNormSpec spec = family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(spec, GridSpec{}));
  state.SetLabel(spec.to_string());
}
BENCHMARK(BM_Axioms)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const TNormSpec spec = family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify(spec, GridSpec{}));
  state.SetLabel(spec.to_string());
}
BENCHMARK(BM_Classify)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
