#pragma once

#include <functional>
#include <vector>

#include "ohz/cutoff.hpp"
#include "ohz/signals.hpp"

namespace ohz {

/// n-th Littlewood-Paley block f*W_n + f*W_n# of a trigonometric polynomial,
/// computed coefficient-wise (exact). n = 0 uses the W_0(z) = conj(z) + 1 + z
/// convention.
PeriodicSignal lp_block(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff);

/// de la Vallee Poussin smoothing f*V_N (coefficient-wise on the circle,
/// discrete Fourier multiplier on the line).
PeriodicSignal vp_smooth(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff);
SampledLineSignal vp_smooth(const SampledLineSignal& f, int n, const SmoothCutoff& cutoff);

/// f*Q_n where Q_n is the m-th order smoothing kernel; m = 1 coincides with
/// vp_smooth.
PeriodicSignal qn_smooth(const PeriodicSignal& f, int n, int m, const SmoothCutoff& cutoff);
SampledLineSignal qn_smooth(const SampledLineSignal& f, int n, int m, const SmoothCutoff& cutoff);

/// f*V_N + sum_{n>N} (f*W_n + f*W_n#), truncated once the block supports pass
/// the degree. Coefficient-exact for every trigonometric polynomial; N >= 0.
PeriodicSignal reconstruct(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff);

/// Values of the scale-0 kernel V (the inverse Fourier transform of the
/// flat-top symbol v) tabulated on a uniform grid via one large FFT.
/// V_n(t) = 2^n V(2^n t), so a single table serves every scale.
class LineKernelTable {
 public:
  explicit LineKernelTable(const SmoothCutoff& cutoff, int log2_samples = 20,
                           double u_range = 256.0);

  double spacing() const { return spacing_; }
  int support_index() const { return support_; }  // |V| negligible beyond this
  double value(int j) const { return values_[static_cast<size_t>(std::abs(j))]; }
  double l1_norm() const { return l1_; }

  /// Trapezoid integral of g(s) V(s) over the tabulated support.
  double integrate(const std::function<double(double)>& g) const;

 private:
  double spacing_;
  int support_;
  double l1_;
  std::vector<double> values_;  // V(j * spacing) for j >= 0
};

/// Sup over an x-grid of the two-route defect in the order-m smoothing
/// identity: the spectral evaluation of f - f*Q_n against the time-domain
/// quadrature of the finite-difference integral sum_k (-1)^k C(m,k) f(x - kt)
/// against V_n(t). f is treated as a 2pi-periodic function on the line.
double qn0_residual(const PeriodicSignal& f, int n, int m, const SmoothCutoff& cutoff,
                    const LineKernelTable& table, int x_samples = 24);

/// Rows (n, xi, symbol_re, symbol_im) of a kernel symbol table for export.
struct KernelTableRow {
  int n;
  double xi;
  double symbol_re;
  double symbol_im;
};
std::vector<KernelTableRow> kernel_table(KernelKind kind, int n_min, int n_max, int xi_samples,
                                         double xi_max, const SmoothCutoff& cutoff, int order = 1);

}  // namespace ohz
