#include <benchmark/benchmark.h>

#include "ohz/operator_integrals.hpp"
#include "ohz/sampling.hpp"
#include "ohz/schur_bounds.hpp"

using namespace ohz;

namespace {

struct Fixture {
  CMat a, k;
  SpectralDecomposition da, dak;
  FunctionModel f = FunctionModel::polynomial({0.0, 1.0, -0.5, 0.25, 0.1});

  explicit Fixture(int dim) {
    OperatorSampler sampler;
    Rng rng(99);
    a = sampler.hermitian(rng, dim);
    k = sampler.hermitian_direction(rng, dim);
    da = eig(a);
    dak = eig(a + k);
  }
};

}  // namespace

static void BM_HermitianEig(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig(fx.a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(2, 16)->Complexity();

static void BM_Doi(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  BivariateSymbol phi = divided_difference_symbol(fx.f);
  for (auto _ : state) benchmark::DoNotOptimize(doi(phi, fx.dak, fx.da, fx.k));
}
BENCHMARK(BM_Doi)->RangeMultiplier(2)->Range(2, 16);

static void BM_MoiOrder2(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Fixture fx(dim);
  std::vector<Spectrum> spectra{to_spectrum(eig(fx.a)), to_spectrum(eig(fx.a + fx.k)),
                                to_spectrum(eig(fx.a + 2.0 * fx.k))};
  std::vector<CMat> factors{fx.k, fx.k};
  for (auto _ : state) benchmark::DoNotOptimize(moi(fx.f, 2, spectra, factors));
}
BENCHMARK(BM_MoiOrder2)->DenseRange(2, 6);

static void BM_MoiOrder3(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Fixture fx(dim);
  std::vector<Spectrum> spectra;
  for (int j = 0; j <= 3; ++j) spectra.push_back(to_spectrum(eig(fx.a + j * fx.k)));
  std::vector<CMat> factors(3, fx.k);
  for (auto _ : state) benchmark::DoNotOptimize(moi(fx.f, 3, spectra, factors));
}
BENCHMARK(BM_MoiOrder3)->DenseRange(2, 5);

static void BM_SchurBounds(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Fixture fx(dim);
  BivariateSymbol phi = divided_difference_symbol(fx.f);
  CMat form = phi.matrix_form(to_spectrum(fx.dak).values, to_spectrum(fx.da).values);
  for (auto _ : state) benchmark::DoNotOptimize(schur_norm_bounds(form, 4, 20));
}
BENCHMARK(BM_SchurBounds)->RangeMultiplier(2)->Range(4, 16);
