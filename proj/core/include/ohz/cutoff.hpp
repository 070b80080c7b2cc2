#pragma once

#include <vector>

#include "ohz/types.hpp"

namespace ohz {

/// Smooth dyadic cutoff w with supp w in [1/2, 2], w(x) = 1 - w(x/2) on [1, 2],
/// built from the exp(-1/t) bump. Together with the flat extension v
/// (v = 1 on [-1, 1], v(x) = w(|x|) for |x| >= 1) it generates every kernel
/// symbol used by the dyadic analysis.
class SmoothCutoff {
 public:
  SmoothCutoff();

  double w(double x) const;
  double h(double t) const;    // transition on [0, 1], h(0)=0, h(1)=1
  double v(double x) const;    // de la Vallee Poussin flat-top symbol
  // Symbol of the m-th order kernel q at unit scale:
  //   q_m(x) = sum_{k=1}^{m} (-1)^{k-1} C(m,k) v(k x).
  double q(double x, int m) const;

  // Samples of w on a logarithmic grid, for export and for the partition
  // property checks; pairs (x, w(x)).
  std::vector<std::pair<double, double>> log_grid_samples(int count) const;

  static constexpr int kMaxScale = 64;  // |n| clamp for kernel scales
};

enum class KernelKind { W, Wsharp, V, Q };

/// One dyadic frequency kernel: scale index n and kind (Q carries order m).
struct FrequencyKernel {
  KernelKind kind = KernelKind::W;
  int n = 0;
  int order = 1;  // only used for Q

  /// Fourier symbol at frequency xi.
  cplx symbol(double xi, const SmoothCutoff& cutoff) const;
  /// Circle coefficient at integer frequency k (same symbol evaluated at k);
  /// scale n must be >= 0. For W at n = 0 this is the W_0(z) = conj(z) + 1 + z
  /// convention.
  cplx circle_coefficient(int k, const SmoothCutoff& cutoff) const;
};

/// Symbol dispatch as a free function; throws on an invalid kind/order.
cplx kernel_symbol(KernelKind kind, int n, double xi, const SmoothCutoff& cutoff, int order = 1);

}  // namespace ohz
