#include <benchmark/benchmark.h>

#include "ohz/contraction.hpp"
#include "ohz/sampling.hpp"

using namespace ohz;

static void BM_Dilate(benchmark::State& state) {
  OperatorSampler sampler;
  Rng rng(7);
  CMat t = sampler.contraction(rng, static_cast<int>(state.range(0)));
  const int degree = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dilate(t, degree));
}
BENCHMARK(BM_Dilate)->ArgsProduct({{2, 4}, {2, 4, 8}});

static void BM_SemiSpectralDoi(benchmark::State& state) {
  OperatorSampler sampler;
  Rng rng(8);
  const int dim = static_cast<int>(state.range(0));
  CMat t = sampler.contraction(rng, dim);
  CMat r = sampler.contraction(rng, dim);
  FunctionModel f = FunctionModel::analytic_poly({0.2, 1.0, cplx(0, -0.3), 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(semi_spectral_doi(f, t, r));
}
BENCHMARK(BM_SemiSpectralDoi)->DenseRange(2, 4);

static void BM_LemmaMcResidual(benchmark::State& state) {
  OperatorSampler sampler;
  Rng rng(9);
  const int dim = static_cast<int>(state.range(0));
  CMat t = sampler.contraction(rng, dim);
  CMat r = sampler.contraction(rng, dim);
  FunctionModel f = FunctionModel::analytic_poly({0.0, 1.0, 0.3, cplx(0.1, 0.2), -0.4});
  for (auto _ : state) benchmark::DoNotOptimize(segment_chain_residual(f, t, r, 2));
}
BENCHMARK(BM_LemmaMcResidual)->DenseRange(2, 3);
