#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ohz/moduli.hpp"
#include "ohz/operator_integrals.hpp"
#include "ohz/sampling.hpp"
#include "ohz/schur_bounds.hpp"

using namespace ohz;

namespace {
OperatorSampler sampler;
}

TEST_CASE("hermitian eigendecomposition") {
  CMat d = CMat::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  SpectralDecomposition s = eig(d);
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(3.0));
  // permutation eigenbasis with the sign convention
  for (int c = 0; c < 3; ++c) {
    int nonzero = 0;
    for (int r = 0; r < 3; ++r)
      if (std::abs(s.vectors(r, c)) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
  }

  CMat flip(2, 2);
  flip << 0, 1, 1, 0;
  SpectralDecomposition sf = eig(flip);
  CHECK(sf.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(sf.eigenvalues(1) == doctest::Approx(1.0));

  Rng rng(1);
  CMat a = sampler.hermitian(rng, 8);
  SpectralDecomposition sa = eig(a);
  CMat recon = sa.vectors * sa.eigenvalues.cast<cplx>().asDiagonal() * sa.vectors.adjoint();
  CHECK((recon - a).norm() <= 1e-10 * (1.0 + a.norm()));

  CMat bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(eig(bad), InvariantError);
}

TEST_CASE("functional calculus") {
  Rng rng(2);
  CMat a = sampler.hermitian(rng, 5);
  CHECK((func_of(a, FunctionModel::identity()) - a).norm() <= 1e-12 * (1.0 + a.norm()));

  CMat d = CMat::Zero(2, 2);
  d(1, 1) = std::log(2.0);
  CMat e = func_of(d, FunctionModel::exponential());
  CHECK(e(0, 0).real() == doctest::Approx(1.0));
  CHECK(e(1, 1).real() == doctest::Approx(2.0));

  // homomorphism: (fg)(A) = f(A) g(A) with f = t^2, g = t^3
  CMat f2 = func_of(a, FunctionModel::power(2));
  CMat f3 = func_of(a, FunctionModel::power(3));
  CMat f5 = func_of(a, FunctionModel::power(5));
  CHECK((f5 - f2 * f3).norm() <= 1e-11 * (1.0 + f5.norm()));
}

TEST_CASE("divided differences") {
  FunctionModel cube = FunctionModel::power(3);
  std::array<cplx, 3> nodes{0.0, 1.0, 2.0};
  CHECK(divided_diff(cube, nodes).real() == doctest::Approx(3.0).epsilon(1e-14));

  // repeated node gives the derivative
  FunctionModel ex = FunctionModel::exponential();
  std::array<cplx, 2> rep{0.7, 0.7};
  CHECK(divided_diff(ex, rep).real() == doctest::Approx(std::exp(0.7)).epsilon(1e-12));
  std::array<cplx, 2> rep2{0.7, 0.7};
  CHECK(divided_diff(cube, rep2).real() == doctest::Approx(3.0 * 0.49).epsilon(1e-12));

  // exactness: D^k kills degree < k and maps t^k to 1
  Rng rng(3);
  std::array<cplx, 4> z;
  for (auto& v : z) v = rng.normal();
  CHECK(std::abs(divided_diff(FunctionModel::power(2), z)) <= 1e-13);
  CHECK(std::abs(divided_diff(cube, z) - 1.0) <= 1e-13);
}

TEST_CASE("divided difference permutation symmetry and route agreement") {
  Rng rng(4);
  FunctionModel f = FunctionModel::laurent({cplx(0.3, 1.0), 0.0, cplx(-1.0, 0.2), 0.5, 1.0}, -2);
  std::vector<cplx> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back(std::polar(1.0, rng.uniform(0.0, 6.28)));
  cplx base = divided_diff(f, nodes);
  for (int perm = 0; perm < 5; ++perm) {
    std::swap(nodes[static_cast<size_t>(perm % 3)], nodes[static_cast<size_t>((perm + 1) % 4)]);
    CHECK(std::abs(divided_diff(f, nodes) - base) <= 1e-10 * (1.0 + std::abs(base)));
  }
  // Newton table and product formula agree with the exact path
  cplx newton = divided_diff_newton(f, nodes);
  cplx product = divided_diff_product(f, nodes);
  CHECK(std::abs(newton - base) <= 1e-9 * (1.0 + std::abs(base)));
  CHECK(std::abs(product - base) <= 1e-9 * (1.0 + std::abs(base)));
}

TEST_CASE("doi basics and the Birman-Solomyak identity") {
  BivariateSymbol one{[](cplx, cplx) { return cplx(1.0); }};
  Rng rng(5);
  CMat a = sampler.hermitian(rng, 4);
  CMat b = sampler.hermitian(rng, 4);
  CMat x = sampler.ginibre(rng, 4);
  CHECK((doi(one, eig(a), eig(b), x) - x).norm() <= 1e-12 * (1.0 + x.norm()));

  // 1x1 case
  BivariateSymbol phi{[](cplx p, cplx q) { return p * q + 1.0; }};
  CMat a1 = CMat::Constant(1, 1, 2.0);
  CMat b1 = CMat::Constant(1, 1, 3.0);
  CMat x1 = CMat::Constant(1, 1, cplx(0.0, 1.0));
  CHECK(std::abs(doi(phi, eig(a1), eig(b1), x1)(0, 0) - cplx(0.0, 7.0)) <= 1e-14);

  FunctionModel cube = FunctionModel::power(3);
  CMat k = sampler.hermitian_direction(rng, 3);
  CMat a3 = sampler.hermitian(rng, 3);
  CMat diff = func_of(a3 + k, cube) - func_of(a3, cube);
  CMat via = doi(divided_difference_symbol(cube), eig(a3 + k), eig(a3), k);
  CHECK((diff - via).norm() <= 1e-10 * (1.0 + diff.norm()));
}

TEST_CASE("doi respects the Schur multiplier upper bound") {
  Rng rng(6);
  CMat a = sampler.hermitian(rng, 5);
  CMat b = sampler.hermitian(rng, 5);
  SpectralDecomposition da = eig(a), db = eig(b);
  BivariateSymbol phi = divided_difference_symbol(FunctionModel::power(4));
  CMat form = phi.matrix_form(to_spectrum(da).values, to_spectrum(db).values);
  SchurBounds bounds = schur_norm_bounds(form);
  for (int t = 0; t < 8; ++t) {
    CMat x = sampler.ginibre(rng, 5);
    CHECK(spectral_norm(doi(phi, da, db, x)) <=
          bounds.upper * spectral_norm(x) * (1.0 + 1e-9));
  }
}

TEST_CASE("moi: consistency, scalar identity, Lemma-m orderings") {
  Rng rng(7);
  FunctionModel f = FunctionModel::power(4);

  // m = 1 equals doi
  CMat a = sampler.hermitian(rng, 4);
  CMat b = sampler.hermitian(rng, 4);
  CMat x = sampler.ginibre(rng, 4);
  CMat viamoi = moi(f, 1, {to_spectrum(eig(a)), to_spectrum(eig(b))}, {x});
  CMat viadoi = doi(divided_difference_symbol(f), eig(a), eig(b), x);
  CHECK((viamoi - viadoi).norm() <= 1e-12 * (1.0 + viadoi.norm()));

  // scalar reduction: m! D^m f(a, a+k, .., a+mk) k^m = Delta_k^m f(a)
  for (int m : {1, 2, 3}) {
    double av = 0.4, kv = 0.3;
    std::vector<cplx> nodes;
    for (int j = 0; j <= m; ++j) nodes.push_back(av + j * kv);
    double mfac = 1.0;
    for (int i = 2; i <= m; ++i) mfac *= i;
    cplx lhs = mfac * divided_diff(f, nodes) * std::pow(kv, m);
    cplx rhs = 0.0;
    for (int j = 0; j <= m; ++j) {
      double sign = ((m - j) % 2) ? -1.0 : 1.0;
      rhs += sign * static_cast<double>(binomial(m, j)) * f.value(av + j * kv);
    }
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }

  // Lemma m, canonical ordering E_A, E_{A+K}, ..., E_{A+mK}
  for (int m : {2, 3}) {
    CMat a0 = sampler.hermitian(rng, 3);
    CMat k = 0.5 * sampler.hermitian_direction(rng, 3);
    CMat lhs = op_finite_diff(f, a0, k, m);
    std::vector<Spectrum> spectra;
    for (int j = 0; j <= m; ++j) spectra.push_back(to_spectrum(eig(a0 + j * k)));
    std::vector<CMat> factors(static_cast<size_t>(m), k);
    double mfac = m == 2 ? 2.0 : 6.0;
    CMat rhs = mfac * moi(f, m, spectra, factors);
    CHECK((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()));
  }

  // the second-difference variant with measures at A+K, A, A-K
  CMat a0 = sampler.hermitian(rng, 3);
  CMat k = 0.5 * sampler.hermitian_direction(rng, 3);
  CMat lhs = func_of(a0 + k, f) - 2.0 * func_of(a0, f) + func_of(a0 - k, f);
  std::vector<Spectrum> spectra{to_spectrum(eig(a0 + k)), to_spectrum(eig(a0)),
                                to_spectrum(eig(a0 - k))};
  CMat rhs = 2.0 * moi(f, 2, spectra, {k, k});
  CHECK((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()));

  CHECK_THROWS_AS(moi(f, 5, {}, {}), DomainError);
}

TEST_CASE("operator finite differences") {
  Rng rng(8);
  FunctionModel f = FunctionModel::power(3);
  CMat a = sampler.hermitian(rng, 4);
  CMat zero = CMat::Zero(4, 4);
  CHECK(op_finite_diff(f, a, zero, 2).norm() <= 1e-12);
  CMat k = sampler.hermitian_direction(rng, 4);
  CMat m1 = op_finite_diff(f, a, k, 1);
  CHECK((m1 - (func_of(a + k, f) - func_of(a, f))).norm() <= 1e-13 * (1.0 + m1.norm()));

  // scalar reduction
  CMat a1 = CMat::Constant(1, 1, 0.3);
  CMat k1 = CMat::Constant(1, 1, 0.2);
  cplx scalar = op_finite_diff(f, a1, k1, 3)(0, 0);
  CHECK(std::abs(scalar - finite_diff(f, 0.2, 3, 0.3)) <= 1e-13);
}

TEST_CASE("frechet derivative") {
  Rng rng(9);
  CMat a = sampler.hermitian(rng, 4);
  CMat h = sampler.hermitian_direction(rng, 4);

  CMat sq = frechet_derivative(FunctionModel::power(2), a, h);
  CHECK((sq - (a * h + h * a)).norm() <= 1e-11 * (1.0 + sq.norm()));
  CMat idd = frechet_derivative(FunctionModel::identity(), a, h);
  CHECK((idd - h).norm() <= 1e-12);

  // linearity in H
  CMat h2 = sampler.hermitian_direction(rng, 4);
  FunctionModel ex = FunctionModel::exponential();
  CMat lin = frechet_derivative(ex, a, h + 2.0 * h2);
  CMat split = frechet_derivative(ex, a, h) + 2.0 * frechet_derivative(ex, a, h2);
  CHECK((lin - split).norm() <= 1e-11 * (1.0 + lin.norm()));

  // directional finite differences converge at first order
  std::vector<double> errs;
  for (double step : {1e-2, 1e-3, 1e-4}) {
    CMat fd = (func_of(a + step * h, ex) - func_of(a, ex)) / step;
    errs.push_back((fd - frechet_derivative(ex, a, h)).norm());
  }
  double slope01 = std::log10(errs[0] / errs[1]);
  double slope12 = std::log10(errs[1] / errs[2]);
  CHECK(slope01 >= 0.9);
  CHECK(slope12 >= 0.9);
}

TEST_CASE("schur multiplier bounds") {
  CMat ones = CMat::Ones(4, 4);
  SchurBounds b = schur_norm_bounds(ones);
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.lower <= b.upper + 1e-9);

  // rank one phi_ij = a_i b_j
  Rng rng(10);
  CVec av(5), bv(5);
  for (int i = 0; i < 5; ++i) {
    av(i) = cplx(rng.normal(), rng.normal());
    bv(i) = cplx(rng.normal(), rng.normal());
  }
  CMat phi = av * bv.transpose();
  double amax = 0, bmax = 0;
  for (int i = 0; i < 5; ++i) {
    amax = std::max(amax, std::abs(av(i)));
    bmax = std::max(bmax, std::abs(bv(i)));
  }
  SchurBounds rb = schur_norm_bounds(phi);
  CHECK(rb.upper <= amax * bmax * (1.0 + 1e-8));
  CHECK(rb.lower <= rb.upper + 1e-9);
  CHECK(rb.lower >= amax * bmax * (1.0 - 1e-6));

  // divided-difference matrices of trig polynomials: envelope over degrees
  OperatorSampler s;
  Rng rng2(11);
  CMat u = s.unitary(rng2, 8);
  Spectrum spec = eig_normal(u);
  double worst = 0.0;
  for (int d : {1, 2, 4, 8, 16}) {
    PeriodicSignal poly(d);
    for (int k = -d; k <= d; ++k) poly.set_coeff(k, cplx(rng2.normal(), rng2.normal()));
    FunctionModel f = poly.as_function();
    BivariateSymbol dd = divided_difference_symbol(f);
    CMat form = dd.matrix_form(spec.values, spec.values);
    SchurBounds sb = schur_norm_bounds(form, 6, 25);
    double supf = poly.sup_norm(1024);
    worst = std::max(worst, sb.upper / (d * supf));
  }
  CHECK(worst < 50.0);
}

TEST_CASE("spectral norm") {
  CMat d = CMat::Zero(3, 3);
  d(0, 0) = -4.0;
  d(1, 1) = 2.0;
  d(2, 2) = 1.0;
  CHECK(spectral_norm(d) == doctest::Approx(4.0));
  CMat n(2, 2);
  n << 0, 1, 0, 0;
  CHECK(spectral_norm(n) == doctest::Approx(1.0));
  Rng rng(12);
  CMat x = sampler.ginibre(rng, 5);
  CHECK(spectral_norm(3.5 * x) == doctest::Approx(3.5 * spectral_norm(x)).epsilon(1e-12));
}

TEST_CASE("unitary second difference identity") {
  Rng rng(13);
  CMat u = sampler.unitary(rng, 3);
  CMat id = CMat::Identity(3, 3);

  FunctionModel f = FunctionModel::laurent({0.5, cplx(0, 1), 0.0, 1.0, -0.25}, -1);
  UnitarySecondDiff trivial = unitary_second_diff(f, u, id);
  CHECK(trivial.direct.norm() <= 1e-12);
  CHECK(trivial.residual <= 1e-12);

  CMat v = sampler.unitary(rng, 3);
  // f(z) = z: triple term vanishes, double term carries everything
  UnitarySecondDiff lin = unitary_second_diff(FunctionModel::analytic_poly({0.0, 1.0}), u, v);
  CMat expect = (v - 2.0 * id + v.adjoint()) * u;
  CHECK((lin.direct - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
  CHECK(lin.residual <= 1e-12);

  for (int t = 0; t < 6; ++t) {
    CMat uu = sampler.unitary(rng, 3);
    CMat vv = sampler.unitary(rng, 3);
    PeriodicSignal poly(5);
    for (int k = -5; k <= 5; ++k) poly.set_coeff(k, cplx(rng.normal(), rng.normal()));
    UnitarySecondDiff res = unitary_second_diff(poly.as_function(), uu, vv);
    CHECK(res.residual <= 1e-9 * (1.0 + res.direct.norm()));
  }

  CMat notu = CMat::Ones(3, 3);
  CHECK_THROWS_AS(unitary_second_diff(f, notu, id), DomainError);
}

TEST_CASE("power commutator bound (products)") {
  Rng rng(14);
  for (int t = 0; t < 500; ++t) {
    int dim = 2 + static_cast<int>(rng.integer(7));
    int n = 1 + static_cast<int>(rng.integer(6));
    CMat x = sampler.ginibre(rng, dim);
    CMat y = sampler.ginibre(rng, dim);
    CMat comm = x * y - y * x;
    CMat big = CMat::Zero(dim, dim);
    CMat yp = CMat::Identity(dim, dim);
    for (int i = 0; i < n; ++i) yp = yp * y;
    big = x * yp - yp * x;
    double bound = n * std::pow(spectral_norm(y), n - 1) * spectral_norm(comm);
    CHECK(spectral_norm(big) <= bound + 1e-12 * (1.0 + bound));
  }
}

TEST_CASE("defect square-root commutator bound") {
  Rng rng(15);
  for (int t = 0; t < 500; ++t) {
    int dim = 2 + static_cast<int>(rng.integer(7));
    CMat tm = 0.95 * sampler.hermitian_direction(rng, dim);
    double tn = spectral_norm(tm);
    CMat x = sampler.ginibre(rng, dim);
    CMat s = psd_sqrt((CMat::Identity(dim, dim) - tm * tm).eval());
    double lhs = spectral_norm(s * x - x * s);
    double rhs = tn * spectral_norm(x * tm - tm * x) / std::sqrt(1.0 - tn * tn);
    CHECK(lhs <= rhs + 1e-12 * (1.0 + rhs));
  }
}

TEST_CASE("frechet derivative preserves hermitian structure") {
  Rng rng(20);
  CMat a = sampler.hermitian(rng, 4);
  CMat h = sampler.hermitian_direction(rng, 4);
  for (auto f : {FunctionModel::power(3), FunctionModel::exponential(),
                 FunctionModel::abs_power(0.5)}) {
    CMat l = frechet_derivative(f, a, h);
    CHECK(is_hermitian(l, 1e-10));
  }
}

TEST_CASE("error paths: dimension mismatches and confluent derivatives") {
  Rng rng(21);
  CMat a = sampler.hermitian(rng, 3);
  CMat b = sampler.hermitian(rng, 4);
  CMat x = sampler.ginibre(rng, 3);
  BivariateSymbol one{[](cplx, cplx) { return cplx(1.0); }};
  CHECK_THROWS_AS(doi(one, eig(a), eig(b), x), DomainError);

  FunctionModel f = FunctionModel::power(2);
  std::vector<Spectrum> spectra{to_spectrum(eig(a)), to_spectrum(eig(b))};
  CHECK_THROWS_AS(moi(f, 1, spectra, {x}), DomainError);

  // |t|^{1/2} has no derivative at 0: a confluent pair at the kink must throw
  FunctionModel root = FunctionModel::abs_power(0.5);
  std::array<cplx, 2> kink{0.0, 0.0};
  CHECK_THROWS_AS(divided_diff(root, kink), DomainError);
}

TEST_CASE("first-order identity for smooth non-polynomial symbols") {
  // exp and sin exercise the confluent Newton table across two spectra
  Rng rng(22);
  for (auto f : {FunctionModel::exponential(), FunctionModel::sine()}) {
    for (int t = 0; t < 20; ++t) {
      int dim = 2 + static_cast<int>(rng.integer(7));
      CMat a = sampler.hermitian(rng, dim);
      CMat k = sampler.hermitian_direction(rng, dim);
      CMat diff = func_of(a + k, f) - func_of(a, f);
      CMat via = doi(divided_difference_symbol(f), eig(a + k), eig(a), k);
      CHECK((diff - via).norm() <= 1e-9 * (1.0 + diff.norm()));
    }
  }
}
