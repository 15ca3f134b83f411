#include <benchmark/benchmark.h>

#include <random>

#include "dulac/parse.hpp"
#include "dulac/synthesis.hpp"

using namespace dulac;

static void BM_QuadraticDulacLinear(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Matrix2> ms;
  while (ms.size() < 64) {
    Matrix2 A{Rat(num(rng)) / den(rng), Rat(num(rng)) / den(rng), Rat(num(rng)) / den(rng), Rat(num(rng)) / den(rng)};
    try {
      quadratic_dulac_linear(A);
      ms.push_back(A);
    } catch (const Error&) {
    }
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_dulac_linear(ms[i++ % ms.size()]));
}
BENCHMARK(BM_QuadraticDulacLinear);

static void BM_LocalDulacVanDerPol(benchmark::State& state) {
  const VectorField X = parse_system("P = y\nQ = -x + (1 - x^2)*y\n");
  for (auto _ : state) benchmark::DoNotOptimize(local_dulac_hyperbolic(X, {0.0, 0.0}));
}
BENCHMARK(BM_LocalDulacVanDerPol)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
