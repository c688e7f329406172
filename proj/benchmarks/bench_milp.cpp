#include <benchmark/benchmark.h>

#include "potts_forge/formulations.hpp"

using namespace potts_forge;

namespace {

void BM_GsmRootLp(benchmark::State& state) {
  const PottsModel m = ising(petersen());
  const GsmProblem g = build_gsm(m, ParamBounds::symmetric(m.graph(), 1, 1), static_cast<int>(state.range(0)));
  long iterations = 0;
  for (auto _ : state) {
    const MilpSolution s = solve_lp(g.milp);
    iterations = s.lp_iterations;
    benchmark::DoNotOptimize(s.objective);
  }
  state.counters["lp_iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_GsmRootLp)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DasPetersen(benchmark::State& state) {
  const PottsModel m = ising(petersen());
  const ParamBounds b = ParamBounds::symmetric(m.graph(), 1, 1);
  const std::vector<StateIndex> data{0, 1023};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_das(m, b, data));
}
BENCHMARK(BM_DasPetersen)->Unit(benchmark::kMillisecond);

void BM_GsmSmall(benchmark::State& state) {
  const PottsModel m = ising(complete(4));
  const ParamBounds b = ParamBounds::symmetric(m.graph(), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_gsm(m, b, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GsmSmall)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_GsmBruteforceSmall(benchmark::State& state) {
  const PottsModel m = ising(cycle(4));
  const ParamBounds b = ParamBounds::symmetric(m.graph(), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gsm_bruteforce(m, b, 3));
}
BENCHMARK(BM_GsmBruteforceSmall)->Unit(benchmark::kMillisecond);

}  // namespace
