#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ohz/contraction.hpp"
#include "ohz/sampling.hpp"

using namespace ohz;

namespace {
OperatorSampler sampler;

FunctionModel random_analytic(int degree, uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> coeffs(static_cast<size_t>(degree) + 1);
  for (auto& c : coeffs) c = cplx(rng.normal(), rng.normal());
  return FunctionModel::analytic_poly(std::move(coeffs));
}
}  // namespace

TEST_CASE("contraction check") {
  Rng rng(1);
  CHECK(check_contraction(sampler.unitary(rng, 3)));
  CHECK_FALSE(check_contraction(2.0 * CMat::Identity(2, 2)));
  CHECK(check_contraction(sampler.contraction(rng, 4)));
}

TEST_CASE("polynomial calculus with the von Neumann guard") {
  Rng rng(2);
  CMat t = sampler.contraction(rng, 3);
  FunctionModel zk = FunctionModel::analytic_poly({0.0, 0.0, 0.0, 1.0});
  CHECK((poly_func_of(t, zk) - t * t * t).norm() <= 1e-12 * (1.0 + t.norm()));

  FunctionModel one = FunctionModel::analytic_poly({1.0});
  CHECK((poly_func_of(t, one) - CMat::Identity(3, 3)).norm() <= 1e-14);

  CMat u = sampler.unitary(rng, 3);
  FunctionModel f = random_analytic(5, 3);
  CHECK((poly_func_of(u, f) - func_of_unitary(u, f)).norm() <=
        1e-12 * (1.0 + poly_func_of(u, f).norm()));

  CHECK_THROWS_AS(poly_func_of(2.0 * CMat::Identity(2, 2), f), InvariantError);
}

TEST_CASE("finite dilation of the zero contraction is a cyclic shift") {
  CMat z = CMat::Zero(1, 1);
  FiniteUnitaryDilation d = dilate(z, 2);
  CHECK(d.total_dim() == 3);
  CHECK(d.power_residual(z) <= 1e-12);
  // the block unitary permutes basis vectors
  double entry_sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) entry_sum += std::abs(d.block_unitary(i, j));
  CHECK(entry_sum == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("a unitary dilates to a block-diagonal with zero residual") {
  Rng rng(4);
  CMat u = sampler.unitary(rng, 3);
  FiniteUnitaryDilation d = dilate(u, 3);
  CHECK(d.power_residual(u) <= 1e-12);
  CHECK(d.block_unitary.topLeftCorner(3, 3).isApprox(u, 1e-12));
  CHECK(d.block_unitary.topRightCorner(3, 3).norm() <= 1e-10);
}

TEST_CASE("random contraction dilations satisfy both invariants") {
  Rng rng(5);
  for (int t = 0; t < 6; ++t) {
    int dim = 1 + static_cast<int>(rng.integer(3));
    CMat c = sampler.contraction(rng, dim);
    FiniteUnitaryDilation d = dilate(c, 6);
    CHECK((d.block_unitary.adjoint() * d.block_unitary -
           CMat::Identity(d.total_dim(), d.total_dim()))
              .norm() <= 1e-10 * (1.0 + d.block_unitary.norm()));
    CHECK(d.power_residual(c) <= 1e-10 * (1.0 + c.norm()));
  }
  CHECK_THROWS_AS(dilate(CMat::Identity(2, 2), 0), DomainError);
  CHECK_THROWS_AS(dilate(3.0 * CMat::Identity(2, 2), 2), InvariantError);
}

TEST_CASE("semi-spectral measure sampler") {
  Rng rng(6);
  CMat t = sampler.contraction(rng, 3);
  SemiSpectralSampler ss(dilate(t, 4));
  CMat total = ss.total_mass();
  CHECK((total - CMat::Identity(3, 3)).norm() <= 1e-10);
  const double pi = std::numbers::pi;
  for (double lo : {-pi, -1.0, 0.4}) {
    CMat mass = ss.arc_mass(lo, lo + 1.1);
    SpectralDecomposition d = eig(hermitian_part(mass));
    CHECK(d.eigenvalues(0) >= -1e-10);
  }
  // moments through the compression: P U^k |_H = T^k
  CHECK(ss.dilation.power_residual(t) <= 1e-10);
}

TEST_CASE("semi-spectral doi") {
  Rng rng(7);
  // unitary pair: coincides with the plain unitary doi
  CMat u = sampler.unitary(rng, 3);
  CMat v = sampler.unitary(rng, 3);
  FunctionModel f = random_analytic(4, 71);
  SemiSpectralDoi ss = semi_spectral_doi(f, v, u);
  CMat plain = doi(divided_difference_symbol(f), eig_normal(u), eig_normal(v), u - v);
  CHECK((ss.result - plain).norm() <= 1e-10 * (1.0 + plain.norm()));
  CHECK(ss.residual_vs_direct <= 1e-10 * (1.0 + plain.norm()));

  // T = R gives zero
  CMat t = sampler.contraction(rng, 3);
  CHECK(semi_spectral_doi(f, t, t).result.norm() <= 1e-12);

  // random contractions, degrees up to 6
  for (int deg : {2, 4, 6}) {
    FunctionModel g = random_analytic(deg, 700 + static_cast<uint64_t>(deg));
    CMat t2 = sampler.contraction(rng, 3);
    CMat r2 = sampler.contraction(rng, 3);
    SemiSpectralDoi res = semi_spectral_doi(g, t2, r2);
    CHECK(res.residual_vs_direct <= 1e-8 * (1.0 + res.result.norm()));
    // the compression does not depend on the dilation degree
    SemiSpectralDoi res2 = semi_spectral_doi(g, t2, r2, deg + 4);
    CHECK((res.result - res2.result).norm() <= 1e-9 * (1.0 + res.result.norm()));
  }
}

TEST_CASE("order-m chain rule on the segment") {
  Rng rng(8);
  FunctionModel f = FunctionModel::analytic_poly({0.0, 0.0, 0.0, 1.0});

  CMat t = sampler.contraction(rng, 2);
  CHECK(segment_chain_residual(f, t, t, 2) <= 1e-12);

  // scalar pair, m = 2, f = z^3
  CMat ts = CMat::Constant(1, 1, cplx(0.3, 0.4));
  CMat rs = CMat::Constant(1, 1, cplx(-0.5, 0.1));
  CHECK(segment_chain_residual(f, ts, rs, 2) <= 1e-10);

  for (int m : {2, 3}) {
    FunctionModel g = random_analytic(4, 80 + static_cast<uint64_t>(m));
    CMat t2 = sampler.contraction(rng, 2);
    CMat r2 = sampler.contraction(rng, 2);
    CHECK(segment_chain_residual(g, t2, r2, m) <= 1e-8);
  }
}
