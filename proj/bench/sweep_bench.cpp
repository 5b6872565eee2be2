// SPDX-License-Identifier: Apache-2.0
//
// Serial rank-one cascade against the OpenMP column sweep, plus the direct
// Cholesky backend for reference. Arguments are {m, n[, workers]}.
#include <benchmark/benchmark.h>

#include "adascale/lp_model.hpp"
#include "adascale/normal_solvers.hpp"
#include "adascale/parallel_sweep.hpp"
#include "adascale/random.hpp"

namespace {

struct Case {
  adascale::DenseMatrix a;
  adascale::Vector d;
  adascale::Vector b;
};

Case make_case(std::size_t m, std::size_t n) {
  adascale::Rng rng(42);
  Case c{adascale::random_full_rank(m, n, rng), adascale::Vector(n), adascale::Vector(m)};
  for (auto& v : c.d) v = rng.log_uniform(1e-3, 1e3);
  for (auto& v : c.b) v = rng.uniform(-1.0, 1.0);
  return c;
}

void BM_direct(benchmark::State& state) {
  const Case c = make_case(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(adascale::solve_direct(c.a, c.d, c.b));
}

void BM_woodbury_serial(benchmark::State& state) {
  const Case c = make_case(state.range(0), state.range(1));
  const auto basis = adascale::prepare_woodbury(c.a);
  for (auto _ : state) benchmark::DoNotOptimize(adascale::solve_woodbury(basis, c.a, c.d, c.b));
}

void BM_woodbury_parallel(benchmark::State& state) {
  const Case c = make_case(state.range(0), state.range(1));
  const auto basis = adascale::prepare_woodbury(c.a);
  const auto workers = static_cast<std::size_t>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(adascale::solve_woodbury_parallel(basis, c.a, c.d, c.b, workers));
  }
}

}  // namespace

BENCHMARK(BM_direct)->Args({64, 128})->Args({256, 512})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_woodbury_serial)->Args({64, 128})->Args({256, 512})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_woodbury_parallel)
    ->Args({64, 128, 1})->Args({64, 128, 2})->Args({64, 128, 4})
    ->Args({256, 512, 1})->Args({256, 512, 2})->Args({256, 512, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
