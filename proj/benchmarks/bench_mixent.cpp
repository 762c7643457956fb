#include <benchmark/benchmark.h>

#include <vector>

#include "mixent/entanglement.hpp"
#include "mixent/omega.hpp"

namespace {

std::vector<mixent::DensityMatrix> sample_states(int count) {
  std::vector<mixent::DensityMatrix> out;
  for (int i = 0; i < count; ++i) out.push_back(mixent::random_density(static_cast<std::uint64_t>(i), 1 + i % 4));
  return out;
}

void BM_EigHermitian(benchmark::State& state) {
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::eig_hermitian(states[i++ % states.size()].matrix()));
  }
}
BENCHMARK(BM_EigHermitian);

void BM_Concurrence(benchmark::State& state) {
  const auto route = static_cast<mixent::LambdaRoute>(state.range(0));
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::concurrence(states[i++ % states.size()], route));
  }
}
BENCHMARK(BM_Concurrence)
    ->Arg(static_cast<int>(mixent::LambdaRoute::SpinFlipOverlap))
    ->Arg(static_cast<int>(mixent::LambdaRoute::ProductSpectrum))
    ->Arg(static_cast<int>(mixent::LambdaRoute::HermitianRoot));

void BM_PptMinEigenvalue(benchmark::State& state) {
  const auto states = sample_states(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::ppt_min_eigenvalue(states[i++ % states.size()]));
  }
}
BENCHMARK(BM_PptMinEigenvalue);

void BM_OmegaBisect(benchmark::State& state) {
  const double tol = 1.0 / static_cast<double>(state.range(0));
  const auto states = sample_states(16);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::omega_c_bisect(states[i++ % states.size()], tol));
  }
}
BENCHMARK(BM_OmegaBisect)->Arg(1000)->Arg(1000000)->Arg(1000000000);

void BM_OmegaRank4Closed(benchmark::State& state) {
  std::vector<mixent::RankFourStats> stats;
  for (std::uint64_t s = 0; s < 64; ++s) stats.push_back(mixent::rank4_stats(mixent::random_structured_rank4(s)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::critical_weight_rank4(stats[i++ % stats.size()]));
  }
}
BENCHMARK(BM_OmegaRank4Closed);

void BM_OmegaRank4Checked(benchmark::State& state) {
  std::vector<mixent::StructuredRank4> families;
  for (std::uint64_t s = 0; s < 16; ++s) families.push_back(mixent::random_structured_rank4(s));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixent::omega_c_rank4(families[i++ % families.size()]));
  }
}
BENCHMARK(BM_OmegaRank4Checked);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
