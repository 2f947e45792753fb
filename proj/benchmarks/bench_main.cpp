#include <benchmark/benchmark.h>

#include "divbound/bounds.hpp"
#include "divbound/divergence.hpp"
#include "divbound/measure.hpp"
#include "divbound/oracle.hpp"

using namespace divbound;

namespace {

MeasurePair sample_pair(std::size_t n) {
  PairSampler sampler(12345, n, 1e-4 / static_cast<double>(n));
  return sampler.next();
}

void BM_MakePair(benchmark::State& state) {
  PairSampler sampler(1, static_cast<std::size_t>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.next());
}
BENCHMARK(BM_MakePair)->Arg(8)->Arg(64)->Arg(512);

void BM_Kl(benchmark::State& state) {
  const auto pair = sample_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kl(pair));
}
BENCHMARK(BM_Kl)->Arg(8)->Arg(64)->Arg(512);

void BM_Renyi(benchmark::State& state) {
  const auto pair = sample_pair(64);
  const double alpha = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(renyi(pair, alpha));
}
BENCHMARK(BM_Renyi)->Arg(1)->Arg(6)->Arg(12);

void BM_TvLowerTwoParam(benchmark::State& state) {
  const auto pair = sample_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tv_lower_two_param(pair));
}
BENCHMARK(BM_TvLowerTwoParam)->Arg(8)->Arg(64)->Arg(512);

void BM_BoundReport(benchmark::State& state) {
  const auto pair = sample_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bound_report(pair));
}
BENCHMARK(BM_BoundReport)->Arg(8)->Arg(64);

void BM_BalanceExact(benchmark::State& state) {
  PairSampler sampler(7, static_cast<std::size_t>(state.range(0)), 1e-3);
  const auto q = sampler.next_distribution();
  for (auto _ : state) benchmark::DoNotOptimize(balance_coefficient(q));
}
BENCHMARK(BM_BalanceExact)->Arg(8)->Arg(16)->Arg(20);

void BM_BalanceApproximate(benchmark::State& state) {
  PairSampler sampler(7, static_cast<std::size_t>(state.range(0)), 1e-4);
  const auto q = sampler.next_distribution();
  for (auto _ : state)
    benchmark::DoNotOptimize(balance_coefficient(q, BalanceMode::allow_approximate));
}
BENCHMARK(BM_BalanceApproximate)->Arg(24)->Arg(64);

void BM_DStar(benchmark::State& state) {
  const auto q = distribution_from_probs({0.25, 0.75});
  for (auto _ : state)
    benchmark::DoNotOptimize(d_star(q, 0.2, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_DStar)->Arg(200)->Arg(2000);

void BM_VerificationSweep(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(run_verification_sweep(42, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_VerificationSweep)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
