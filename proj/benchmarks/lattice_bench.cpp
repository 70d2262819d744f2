#include <benchmark/benchmark.h>

#include <random>

#include "fewno/int_lattice.hpp"

namespace {

fewno::IntMatrix random_matrix(std::size_t n, long bound, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  fewno::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_Hermite(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1000000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(fewno::hermite_factor(m));
}
BENCHMARK(BM_Hermite)->DenseRange(2, 8, 2);

void BM_Smith(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1000000, 8);
  for (auto _ : state) benchmark::DoNotOptimize(fewno::smith_factor(m));
}
BENCHMARK(BM_Smith)->DenseRange(2, 8, 2);

void BM_Determinant(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1000000, 9);
  for (auto _ : state) benchmark::DoNotOptimize(fewno::determinant(m));
}
BENCHMARK(BM_Determinant)->DenseRange(2, 8, 2);

}  // namespace
