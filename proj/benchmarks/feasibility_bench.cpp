#include <benchmark/benchmark.h>

#include "fewno/feasibility.hpp"

namespace {

void BM_ClassifyTrinomial(benchmark::State& state) {
  auto f = fewno::parse_polynomial("3 - 7*x1^" + std::to_string(state.range(0)) + " + 2*x1^" + std::to_string(2 * state.range(0) + 1));
  for (auto _ : state) benchmark::DoNotOptimize(fewno::classify_positive(f));
}
BENCHMARK(BM_ClassifyTrinomial)->RangeMultiplier(8)->Range(1, 1 << 15);

void BM_ClassifyCircuit(benchmark::State& state) {
  static const char* polys[] = {
      "1 + x1^4 + x2^4 - 3*x1*x2",
      "x1*x2 - x1 - x2 + 1",
      "1 + x1^6 + x2^6 + x3^6 - 5*x1*x2*x3",
      "2 + x1^12*x2 + x2^9*x3^2 - 17*x1^3*x2^3*x3 + x3^11",
  };
  auto f = fewno::parse_polynomial(polys[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(fewno::classify_positive(f));
}
BENCHMARK(BM_ClassifyCircuit)->DenseRange(0, 3);

void BM_FeasRealSimplex(benchmark::State& state) {
  auto f = fewno::parse_polynomial("5 + x1^20*x2^3 - 2*x2^14*x3^8 + 7*x3^19");
  for (auto _ : state) benchmark::DoNotOptimize(fewno::feas_real_full(f));
}
BENCHMARK(BM_FeasRealSimplex);

}  // namespace
