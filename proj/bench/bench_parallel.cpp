#include <benchmark/benchmark.h>

#include "chsh/case_study.hpp"
#include "chsh/optimizer.hpp"
#include "chsh/random.hpp"
#include "chsh/scan.hpp"

namespace {

chsh::Execution mode(const benchmark::State& state) {
  return state.range(1) ? chsh::Execution::parallel : chsh::Execution::serial;
}

void BM_MaxChsh(benchmark::State& state) {
  chsh::RngStream rng(1);
  const auto betas = chsh::decompose(chsh::random_bures_state(static_cast<std::size_t>(state.range(0)), rng));
  chsh::OptimizerConfig cfg;
  cfg.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(chsh::max_chsh(betas, cfg).value);
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}
BENCHMARK(BM_MaxChsh)->ArgsProduct({{2, 4, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(chsh::scan_samples(static_cast<std::size_t>(state.range(0)), 32, 7, mode(state)));
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}
BENCHMARK(BM_Scan)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Grid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chsh::grid_scan(static_cast<int>(state.range(0)), mode(state)));
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}
BENCHMARK(BM_Grid)->ArgsProduct({{11}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TraceNorm(benchmark::State& state) {
  chsh::RngStream rng(2);
  const auto h = chsh::bures_state(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(chsh::trace_norm(h));
}
BENCHMARK(BM_TraceNorm)->Arg(3)->Arg(4)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
