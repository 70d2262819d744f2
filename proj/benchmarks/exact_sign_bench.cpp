#include <benchmark/benchmark.h>

#include "fewno/exact_sign.hpp"

namespace {

using fewno::Integer;

void BM_LogInterval(benchmark::State& state) {
  const auto bits = static_cast<std::size_t>(state.range(0));
  Integer n("1000000007");
  for (auto _ : state) benchmark::DoNotOptimize(fewno::log_interval(n, bits));
}
BENCHMARK(BM_LogInterval)->RangeMultiplier(4)->Range(64, 16384);

// 2^(s*h) vs 3^(s*k) for a convergent h/k of log2(3): the gap shrinks as the
// convergent improves, so the required precision grows.
void BM_BinomialSignNearTie(benchmark::State& state) {
  static const long conv[][2] = {{19, 12}, {84, 53}, {485, 306}, {24727, 15601}, {125743, 79335}};
  const auto& c = conv[state.range(0)];
  Integer scale = (Integer(1) << 40);
  std::vector<Integer> al{2}, be{3}, us{Integer(c[0]) * scale}, vs{Integer(c[1]) * scale};
  for (auto _ : state) benchmark::DoNotOptimize(fewno::binomial_sign(al, be, us, vs));
}
BENCHMARK(BM_BinomialSignNearTie)->DenseRange(0, 4);

void BM_BinomialSignEqual(benchmark::State& state) {
  std::vector<Integer> al{6, 10}, be{2, 3, 5}, us{state.range(0), state.range(0)},
      vs{2 * state.range(0), state.range(0), state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(fewno::binomial_sign(al, be, us, vs));
}
BENCHMARK(BM_BinomialSignEqual)->Range(8, 1 << 20);

void BM_GcdFreeBasis(benchmark::State& state) {
  std::vector<Integer> al;
  Integer p = 1000003, q = 998244353, r = 1000000007;
  for (int i = 0; i < state.range(0); ++i) al.push_back((i % 2 ? p : q) * (i % 3 ? r : p));
  for (auto _ : state) benchmark::DoNotOptimize(fewno::gcd_free_basis(al));
}
BENCHMARK(BM_GcdFreeBasis)->DenseRange(2, 8, 2);

}  // namespace
