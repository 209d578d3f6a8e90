#include "qhs/random.hpp"
#include "qhs/simulator.hpp"
#include "qhs/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

qhs::AmplitudeVector random_vector(std::uint64_t m) {
  qhs::Rng rng(m);
  std::vector<qhs::Complex> values(m);
  for (auto& c : values) c = {rng.uniform(), rng.uniform()};
  return {qhs::DomainSpec::cyclic(m), std::move(values)};
}

void BM_DftFast(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qhs::dft(x, qhs::Direction::forward));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftFast)->RangeMultiplier(4)->Range(16, 1 << 16)->Arg(4093)->Complexity();

void BM_DftDirect(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qhs::dft_direct(x, qhs::Direction::forward));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftDirect)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_DftProduct(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto d = qhs::DomainSpec::product(2, n);
  qhs::AmplitudeVector x(d);
  x.entries[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(qhs::dft_product(x));
}
BENCHMARK(BM_DftProduct)->DenseRange(4, 16, 4);

void BM_MarginalInjective(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  qhs::Rng rng(1);
  const auto oracle = qhs::make_periodic_oracle(m, m / 16, true, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qhs::marginal_probabilities(oracle));
}
BENCHMARK(BM_MarginalInjective)->RangeMultiplier(4)->Range(256, 1 << 16);

void BM_LeftMarginalPerLabel(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  qhs::Rng rng(1);
  const auto oracle = qhs::make_periodic_oracle(m, m / 16, true, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qhs::left_marginal(oracle));
}
BENCHMARK(BM_LeftMarginalPerLabel)->RangeMultiplier(4)->Range(256, 4096);

}  // namespace
