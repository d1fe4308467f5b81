// Serial vs OpenMP closure kernels and serial vs parallel ddmin probing.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "absint/domains/dbm_kernels.hpp"
#include "absint/reducer/ddmin.hpp"

namespace {

using absint::domains::Bound;

std::vector<Bound> random_matrix(std::size_t n) {
  std::mt19937 rng(static_cast<unsigned>(n));
  std::uniform_int_distribution<int> c(0, 1000), keep(0, 3);
  std::vector<Bound> m(n * n, Bound::plus_infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j) m[i * n + j] = 0;
      else if (keep(rng) == 0) m[i * n + j] = c(rng);
  return m;
}

template <bool Parallel>
void BM_Close(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto input = random_matrix(n);
  for (auto _ : state) {
    auto m = input;
    bool ok = Parallel ? absint::domains::dbm_kernels::close_parallel(m, n)
                       : absint::domains::dbm_kernels::close_serial(m, n);
    benchmark::DoNotOptimize(ok);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Close<false>)->Name("close_serial")->RangeMultiplier(2)->Range(16, 256)->Complexity();
BENCHMARK(BM_Close<true>)->Name("close_parallel")->RangeMultiplier(2)->Range(16, 256)->Complexity();

// A kernel of three units among n; each probe costs a little work so the
// parallel variant has something to overlap.
template <bool Parallel>
void BM_Ddmin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const absint::reducer::Subset kernel{1, n / 2, n - 1};
  auto oracle = [&](const absint::reducer::Subset& s) {
    volatile double sink = 0;
    for (int k = 0; k < 20000; ++k) sink = sink + k;
    return std::includes(s.begin(), s.end(), kernel.begin(), kernel.end());
  };
  absint::reducer::DdminOptions opts;
  opts.parallel = Parallel;
  for (auto _ : state) benchmark::DoNotOptimize(absint::reducer::ddmin(n, oracle, opts));
}
BENCHMARK(BM_Ddmin<false>)->Name("ddmin_serial")->Arg(64)->Arg(256);
BENCHMARK(BM_Ddmin<true>)->Name("ddmin_parallel")->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
