#include <benchmark/benchmark.h>

#include "dulac/certify.hpp"
#include "dulac/parse.hpp"

using namespace dulac;

static void BM_CertifyStrip(benchmark::State& state) {
  const Poly p = parse_poly("1 - x^2");
  const Box2 box = parse_region("-0.95:0.95,-4:4");
  for (auto _ : state) benchmark::DoNotOptimize(certify_positive(p, box));
}
BENCHMARK(BM_CertifyStrip);

static void BM_CertifyNearZero(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Poly p = parse_poly("x^2 + y^2 + x^2*y^2") + Poly(Rat(1) / Rat(mpz_class(1) << k));
  const Box2 box = parse_region("-1:1,-1:1");
  bool positive = false;
  for (auto _ : state) {
    auto c = certify_positive(p, box, 24);
    positive = c.is_positive();
    benchmark::DoNotOptimize(c);
  }
  state.counters["positive"] = positive;
}
BENCHMARK(BM_CertifyNearZero)->Arg(4)->Arg(8)->Arg(12);

static void BM_BernsteinCoefficients(benchmark::State& state) {
  const Poly p = parse_poly("(1 + x - 2*y)^" + std::to_string(state.range(0)));
  const Box2 box = parse_region("-1:2,-1/3:1/2");
  for (auto _ : state) benchmark::DoNotOptimize(certify_positive(p, box, 0));
}
BENCHMARK(BM_BernsteinCoefficients)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
