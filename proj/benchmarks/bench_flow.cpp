#include <benchmark/benchmark.h>

#include "dulac/analyze.hpp"
#include "dulac/flow.hpp"
#include "dulac/parse.hpp"

using namespace dulac;

namespace {
const VectorField& vdp() {
  static const VectorField X = parse_system("P = y\nQ = -x + (1 - x^2)*y\n");
  return X;
}
}  // namespace

static void BM_IntegrateVanDerPol(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto tr = integrate(vdp(), {2.0, 0.0}, 20.0, tol, default_domain());
    steps = tr.times.size();
    benchmark::DoNotOptimize(tr);
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_IntegrateVanDerPol)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

static void BM_DetectLimitCycle(benchmark::State& state) {
  const Section s = Section::make({0.0, 0.0}, {0.0, 1.0}, Crossing::Negative);
  for (auto _ : state) benchmark::DoNotOptimize(detect_limit_cycle(vdp(), s, {1.0, 0.0}));
}
BENCHMARK(BM_DetectLimitCycle)->Unit(benchmark::kMillisecond);

static void BM_AnalyzeVanDerPol(benchmark::State& state) {
  AnalysisConfig cfg;
  cfg.parallel = state.range(0) != 0;
  const Box2 region = parse_region("-4:4,-4:4");
  for (auto _ : state) benchmark::DoNotOptimize(run_analyze(vdp(), region, cfg));
}
BENCHMARK(BM_AnalyzeVanDerPol)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
