#include "ohz/signals.hpp"

#include <cmath>
#include <numbers>

namespace ohz {

PeriodicSignal PeriodicSignal::monomial(int k, cplx c) {
  PeriodicSignal s(std::abs(k));
  s.set_coeff(k, c);
  return s;
}

void PeriodicSignal::set_coeff(int k, cplx c) {
  if (std::abs(k) > degree_) {
    // grow to the new degree, keeping existing coefficients centred
    int d = std::abs(k);
    std::vector<cplx> grown(2 * d + 1, 0.0);
    for (int j = -degree_; j <= degree_; ++j) grown[static_cast<size_t>(j + d)] = coeff(j);
    coeffs_ = std::move(grown);
    degree_ = d;
  }
  coeffs_[static_cast<size_t>(k + degree_)] = c;
}

cplx PeriodicSignal::evaluate(cplx zeta) const {
  // Horner in zeta from the top degree down, then shift by zeta^{-d}.
  cplx acc = 0.0;
  for (int k = degree_; k >= -degree_; --k) acc = acc * zeta + coeff(k);
  return acc * std::pow(zeta, -degree_);
}

double PeriodicSignal::sup_norm(int samples) const {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    double th = 2.0 * std::numbers::pi * i / samples;
    best = std::max(best, std::abs(evaluate(std::polar(1.0, th))));
  }
  return best;
}

double PeriodicSignal::max_coeff_distance(const PeriodicSignal& other) const {
  int d = std::max(degree_, other.degree_);
  double best = 0.0;
  for (int k = -d; k <= d; ++k) best = std::max(best, std::abs(coeff(k) - other.coeff(k)));
  return best;
}

PeriodicSignal& PeriodicSignal::operator+=(const PeriodicSignal& other) {
  int d = std::max(degree_, other.degree_);
  for (int k = -d; k <= d; ++k) {
    cplx s = coeff(k) + other.coeff(k);
    if (s != cplx(0.0) || std::abs(k) <= degree_) set_coeff(k, s);
  }
  return *this;
}

FunctionModel PeriodicSignal::as_function() const {
  return FunctionModel::laurent(coeffs_, -degree_);
}

SampledLineSignal::SampledLineSignal(double extent, int count, double band_limit)
    : extent_(extent), count_(count), band_limit_(band_limit), values_(count, 0.0) {
  if (extent <= 0.0 || count < 2) throw DomainError("SampledLineSignal: bad grid");
  if (spacing() > std::numbers::pi / band_limit + 1e-15)
    throw DomainError("SampledLineSignal: spacing violates the declared band limit");
}

double SampledLineSignal::sup_distance(const SampledLineSignal& other) const {
  if (other.count_ != count_) throw DomainError("sup_distance: grid mismatch");
  double best = 0.0;
  for (int j = 0; j < count_; ++j) best = std::max(best, std::abs(values_[j] - other.values_[j]));
  return best;
}

double SampledLineSignal::out_of_band_energy() const {
  std::vector<cplx> spec = values_;
  fft(spec, false);
  double total = 0.0, outside = 0.0;
  for (int m = 0; m < count_; ++m) {
    double e = std::norm(spec[static_cast<size_t>(m)]);
    total += e;
    if (std::abs(dft_bin_frequency(m, count_, spacing())) > band_limit_) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

void fft(std::vector<cplx>& a, bool invert) {
  const size_t n = a.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) {
    // direct DFT fallback
    std::vector<cplx> out(n, 0.0);
    double sgn = invert ? 1.0 : -1.0;
    for (size_t k = 0; k < n; ++k) {
      for (size_t j = 0; j < n; ++j) {
        double ang = sgn * 2.0 * std::numbers::pi * static_cast<double>(k * j % n) / n;
        out[k] += a[j] * std::polar(1.0, ang);
      }
    }
    if (invert)
      for (auto& x : out) x /= static_cast<double>(n);
    a = std::move(out);
    return;
  }
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
    cplx wl = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = a[i + j];
        cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (auto& x : a) x /= static_cast<double>(n);
}

double dft_bin_frequency(int m, int n, double spacing) {
  int centered = m <= n / 2 ? m : m - n;
  return 2.0 * std::numbers::pi * centered / (n * spacing);
}

std::vector<cplx> circle_values(const PeriodicSignal& f, int log2_n) {
  int n = 1 << log2_n;
  if (n < 2 * f.degree() + 1) throw DomainError("circle_values: grid finer than 2 deg + 1 required");
  std::vector<cplx> a(static_cast<size_t>(n), 0.0);
  for (int k = -f.degree(); k <= f.degree(); ++k) {
    int idx = (k % n + n) % n;
    a[static_cast<size_t>(idx)] += f.coeff(k);
  }
  // f(zeta_j) = sum_k c_k e^{2 pi i k j / N}: inverse DFT scaled by N
  fft(a, true);
  for (auto& z : a) z *= static_cast<double>(n);
  return a;
}

}  // namespace ohz
