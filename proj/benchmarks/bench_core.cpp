#include <benchmark/benchmark.h>

#include "ptosc/borel.hpp"
#include "ptosc/linalg.hpp"
#include "ptosc/operators.hpp"
#include "ptosc/perturbation.hpp"

using namespace ptosc;

static void BM_AssembleW1d(benchmark::State& state) {
  const auto w = parse_potential("x1^3", 1);
  const BasisTruncation t{1, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_w(t, w));
}
BENCHMARK(BM_AssembleW1d)->Arg(40)->Arg(80)->Arg(160);

static void BM_AssembleWHenonHeiles(benchmark::State& state) {
  const auto w = parse_potential("x1^2*x2", 2);
  const BasisTruncation t{2, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_w(t, w));
}
BENCHMARK(BM_AssembleWHenonHeiles)->Arg(12)->Arg(20)->Arg(28);

static void BM_EigHermitianQ(benchmark::State& state) {
  const auto w = parse_potential("x1^2*x2", 2);
  const BasisTruncation t{2, static_cast<int>(state.range(0))};
  const auto q = assemble_q(t, w, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(q, true));
}
BENCHMARK(BM_EigHermitianQ)->Arg(12)->Arg(20)->Arg(28);

static void BM_EigGeneralH(benchmark::State& state) {
  const auto w = parse_potential("x1^2*x2", 2);
  const BasisTruncation t{2, static_cast<int>(state.range(0))};
  const auto h = assemble_h(t, w, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(eig_general(h));
}
BENCHMARK(BM_EigGeneralH)->Arg(12)->Arg(20);

static void BM_RsCoefficients(benchmark::State& state) {
  const auto w = parse_potential("x1^3", 1);
  const int order = static_cast<int>(state.range(0));
  const BasisTruncation t{1, 3 * order + 2};
  const MultiIndex ground{{0}};
  for (auto _ : state)
    benchmark::DoNotOptimize(rs_coefficients(t, w, ground, order));
}
BENCHMARK(BM_RsCoefficients)->Arg(8)->Arg(16)->Arg(24);

static void BM_BorelSum(benchmark::State& state) {
  const auto w = parse_potential("x1^3", 1);
  const BasisTruncation t{1, 50};
  const auto series = rs_coefficients(t, w, MultiIndex{{0}}, 16);
  for (auto _ : state)
    benchmark::DoNotOptimize(borel_sum(series, 0.05, 0.5, 64));
}
BENCHMARK(BM_BorelSum);

BENCHMARK_MAIN();
