#include "qhs/algorithms.hpp"
#include "qhs/postprocess.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_RecoverRational(benchmark::State& state) {
  const std::uint64_t P = static_cast<std::uint64_t>(state.range(0));
  const qhs::BigInt Q = 2 * qhs::BigInt(P) * P;
  const qhs::BinnedOutcome outcome{Q * (P - 1) / P, Q};
  for (auto _ : state) benchmark::DoNotOptimize(qhs::recover_rational(outcome, P));
}
BENCHMARK(BM_RecoverRational)->Arg(10)->Arg(1000)->Arg(1000000);

void BM_AlgCircleTrial(benchmark::State& state) {
  const qhs::CircleParams params{static_cast<std::uint64_t>(state.range(0)), 16, 2};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qhs::run_alg_circle(params, seed++));
}
BENCHMARK(BM_AlgCircleTrial)->Arg(1024)->Arg(4096);

void BM_AlgSubspaceTrial(benchmark::State& state) {
  qhs::SubspaceParams params;
  params.p = 2;
  params.n = static_cast<unsigned>(state.range(0));
  params.basis = {qhs::ModVector(params.n, 1)};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qhs::run_alg_subspace(params, seed++));
}
BENCHMARK(BM_AlgSubspaceTrial)->Arg(4)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
