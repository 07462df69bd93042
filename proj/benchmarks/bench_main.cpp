#include <benchmark/benchmark.h>

#include <random>

#include "booldisc/certify.hpp"
#include "booldisc/strategies.hpp"

using namespace booldisc;

namespace {

SymMatrix random_symmetric(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SymMatrix a(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) a.set(i, j, unit(rng));
  }
  return a;
}

void BM_sym_eigen(benchmark::State& state) {
  SymMatrix a = random_symmetric(static_cast<int>(state.range(0)), 12345);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eigen(a));
  }
}
BENCHMARK(BM_sym_eigen)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_greedy_reference(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  Overlap s(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_prob(f, s));
}
BENCHMARK(BM_greedy_reference)->Arg(7)->Arg(9)->Arg(11);

void BM_greedy_walsh(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  Overlap s(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_prob_fast(f, s));
}
BENCHMARK(BM_greedy_walsh)->Arg(7)->Arg(9)->Arg(11);

void BM_global_prob(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  Overlap s(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(global_prob(f, s));
}
BENCHMARK(BM_global_prob)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_pgm_prob(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  Overlap s(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(pgm_prob(f, s));
}
BENCHMARK(BM_pgm_prob)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_counting_condition(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(counting_condition(f));
}
BENCHMARK(BM_counting_condition)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_certify_affine(benchmark::State& state) {
  BoolFunc f = BoolFunc::parity(BitVec{static_cast<int>(state.range(0)), 0b10101});
  for (auto _ : state) benchmark::DoNotOptimize(certify_affine(f));
}
BENCHMARK(BM_certify_affine)->Arg(8)->Arg(10);

void BM_build_ensemble(benchmark::State& state) {
  BoolFunc f = BoolFunc::majority(static_cast<int>(state.range(0)));
  Overlap s(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_ensemble(f, s));
}
BENCHMARK(BM_build_ensemble)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
