#include <benchmark/benchmark.h>

#include <random>

#include "potts_forge/spectrum.hpp"

using namespace potts_forge;

namespace {

Params random_params(const PottsModel& m) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Params p = Params::zeros(m);
  for (double& h : p.H) h = u(rng);
  for (double& j : p.J) j = u(rng);
  return p;
}

void BM_SpectrumComplete(benchmark::State& state) {
  const PottsModel m = ising(complete(static_cast<int>(state.range(0))));
  const Params p = random_params(m);
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(m, p));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(m.n_states()));
}
BENCHMARK(BM_SpectrumComplete)->Arg(10)->Arg(14)->Arg(18);

void BM_SpectrumPetersenThreads(benchmark::State& state) {
  const PottsModel m = ising(petersen());
  const Params p = random_params(m);
  SpectrumOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(m, p, o));
}
BENCHMARK(BM_SpectrumPetersenThreads)->Arg(1)->Arg(4);

void BM_NllGradient(benchmark::State& state) {
  const PottsModel m = ising(petersen());
  const Params p = random_params(m);
  const std::vector<StateIndex> data{0, 5, 17};
  for (auto _ : state) benchmark::DoNotOptimize(nll_gradient(m, p, data, 1.0));
}
BENCHMARK(BM_NllGradient);

void BM_LogNllExcessCurve(benchmark::State& state) {
  const PottsModel m = ising(petersen());
  const Spectrum s = compute_spectrum(m, random_params(m));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 1; i <= 64; ++i) acc += log_nll_excess(s, s.ground, 0.1 * i);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_LogNllExcessCurve);

}  // namespace
