#include "ohz/sampling.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace ohz {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::stream(uint64_t master_seed, uint64_t index) {
  return Rng(splitmix64(master_seed ^ splitmix64(index + 0x1234567fULL)));
}

double Rng::uniform() {
  // 53-bit mantissa from the top bits
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

cplx Rng::cnormal() {
  double re = normal();
  double im = normal();
  return cplx(re, im) / std::sqrt(2.0);
}

uint64_t Rng::integer(uint64_t bound) {
  // modulo bias is irrelevant at desk scale bounds
  return engine_() % bound;
}

CMat OperatorSampler::ginibre(Rng& rng, int n) const {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.cnormal();
  return g;
}

CMat OperatorSampler::hermitian(Rng& rng, int n) const {
  CMat h = hermitian_part(ginibre(rng, n));
  if (n == 1) return CMat::Constant(1, 1, rng.uniform(-spectrum_halfwidth, spectrum_halfwidth));
  SpectralDecomposition d = eig(h);
  double lo = d.eigenvalues(0), hi = d.eigenvalues(n - 1);
  double span = hi - lo;
  if (span < 1e-12) return CMat::Zero(n, n);
  RVec mapped(n);
  for (int i = 0; i < n; ++i)
    mapped(i) = -spectrum_halfwidth + 2.0 * spectrum_halfwidth * (d.eigenvalues(i) - lo) / span;
  return d.vectors * mapped.cast<cplx>().asDiagonal() * d.vectors.adjoint();
}

CMat OperatorSampler::psd(Rng& rng, int n) const {
  CMat h = hermitian_part(ginibre(rng, n));
  SpectralDecomposition d = eig(h);
  double lo = d.eigenvalues(0), hi = d.eigenvalues(n - 1);
  double span = std::max(hi - lo, 1e-12);
  RVec mapped(n);
  for (int i = 0; i < n; ++i)
    mapped(i) = spectrum_halfwidth * (d.eigenvalues(i) - lo) / span;
  return d.vectors * mapped.cast<cplx>().asDiagonal() * d.vectors.adjoint();
}

CMat OperatorSampler::unitary(Rng& rng, int n) const {
  Eigen::HouseholderQR<CMat> qr(ginibre(rng, n));
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 1e-300) ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

CMat OperatorSampler::contraction(Rng& rng, int n) const {
  CMat g = ginibre(rng, n);
  double s = spectral_norm(g);
  if (s < 1e-12) return CMat::Zero(n, n);
  return g * (contraction_norm / s);
}

CMat OperatorSampler::hermitian_direction(Rng& rng, int n) const {
  CMat h = hermitian_part(ginibre(rng, n));
  double s = spectral_norm(h);
  if (s < 1e-12) return CMat::Identity(n, n);
  return h / s;
}

CMat OperatorSampler::direction(Rng& rng, int n) const {
  CMat g = ginibre(rng, n);
  double s = spectral_norm(g);
  if (s < 1e-12) return CMat::Identity(n, n);
  return g / s;
}

}  // namespace ohz
