#include <benchmark/benchmark.h>

#include "ohz/littlewood_paley.hpp"
#include "ohz/moduli.hpp"
#include "ohz/sampling.hpp"

using namespace ohz;

static void BM_CutoffPartition(benchmark::State& state) {
  SmoothCutoff cutoff;
  for (auto _ : state) {
    double acc = 0.0;
    for (int n = -64; n <= 64; ++n) acc += cutoff.w(1.37 * std::ldexp(1.0, -n));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_CutoffPartition);

static void BM_Reconstruct(benchmark::State& state) {
  SmoothCutoff cutoff;
  Rng rng(3);
  const int degree = static_cast<int>(state.range(0));
  PeriodicSignal f(degree);
  for (int k = -degree; k <= degree; ++k) f.set_coeff(k, cplx(rng.normal(), rng.normal()));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(f, 3, cutoff));
}
BENCHMARK(BM_Reconstruct)->RangeMultiplier(4)->Range(16, 1024);

static void BM_CircleSeminorm(benchmark::State& state) {
  Rng rng(4);
  const int degree = static_cast<int>(state.range(0));
  PeriodicSignal f(degree);
  for (int k = -degree; k <= degree; ++k) f.set_coeff(k, cplx(rng.normal(), rng.normal()));
  auto om = ModulusOfContinuity::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(circle_grid_seminorm(f, om, 1));
}
BENCHMARK(BM_CircleSeminorm)->RangeMultiplier(4)->Range(16, 1024);

static void BM_OmegaStar(benchmark::State& state) {
  auto om = ModulusOfContinuity::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(omega_star(om, 1, 0.37));
}
BENCHMARK(BM_OmegaStar);
