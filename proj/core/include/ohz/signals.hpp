#pragma once

#include <vector>

#include "ohz/function_model.hpp"
#include "ohz/types.hpp"

namespace ohz {

/// Trigonometric polynomial on the circle, stored as coefficients
/// c_k for k in [-d, d].
class PeriodicSignal {
 public:
  PeriodicSignal() : degree_(0), coeffs_(1, 0.0) {}
  explicit PeriodicSignal(int degree) : degree_(degree), coeffs_(2 * degree + 1, 0.0) {}
  static PeriodicSignal monomial(int k, cplx c = 1.0);

  int degree() const { return degree_; }
  cplx coeff(int k) const {
    return std::abs(k) <= degree_ ? coeffs_[static_cast<size_t>(k + degree_)] : cplx(0.0);
  }
  void set_coeff(int k, cplx c);

  cplx evaluate(cplx zeta) const;  // sum c_k zeta^k, zeta on T
  double sup_norm(int samples = 4096) const;
  double max_coeff_distance(const PeriodicSignal& other) const;

  PeriodicSignal& operator+=(const PeriodicSignal& other);
  FunctionModel as_function() const;

 private:
  int degree_;
  std::vector<cplx> coeffs_;
};

/// Uniformly sampled signal on [-L, L] with a declared band limit sigma.
/// Spectral operations treat it as one period of length 2L.
class SampledLineSignal {
 public:
  SampledLineSignal(double extent, int count, double band_limit);

  double extent() const { return extent_; }
  double spacing() const { return 2.0 * extent_ / count_; }
  int count() const { return count_; }
  double band_limit() const { return band_limit_; }
  double grid_point(int j) const { return -extent_ + j * spacing(); }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  double sup_distance(const SampledLineSignal& other) const;

  /// Relative spectral energy sitting beyond the declared band limit: the
  /// truncation/aliasing error of spectral operations on this grid, reported
  /// rather than hidden.
  double out_of_band_energy() const;

 private:
  double extent_;
  int count_;
  double band_limit_;
  std::vector<cplx> values_;
};

// In-place radix-2 FFT with a direct-DFT fallback for non power-of-two sizes.
// invert = true applies the inverse transform including the 1/N factor.
void fft(std::vector<cplx>& a, bool invert);

// Values of a trigonometric polynomial on the uniform 2^log2_n circle grid
// (zeta_j = exp(2 pi i j / N)), computed by one FFT.
std::vector<cplx> circle_values(const PeriodicSignal& f, int log2_n);

// Frequency of DFT bin m for an N-point signal with sample spacing h
// (bins taken in the symmetric range).
double dft_bin_frequency(int m, int n, double spacing);

}  // namespace ohz
