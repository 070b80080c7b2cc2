#include "ohz/littlewood_paley.hpp"

#include <cmath>
#include <numbers>

namespace ohz {

namespace {

PeriodicSignal apply_circle_multiplier(const PeriodicSignal& f,
                                       const std::function<double(int)>& mult) {
  PeriodicSignal out(f.degree());
  for (int k = -f.degree(); k <= f.degree(); ++k) {
    cplx c = f.coeff(k);
    if (c != cplx(0.0)) out.set_coeff(k, mult(k) * c);
  }
  return out;
}

SampledLineSignal apply_line_multiplier(const SampledLineSignal& f,
                                        const std::function<double(double)>& mult) {
  SampledLineSignal out = f;
  std::vector<cplx> spec = f.values();
  fft(spec, false);
  const int n = f.count();
  for (int m = 0; m < n; ++m) spec[static_cast<size_t>(m)] *= mult(dft_bin_frequency(m, n, f.spacing()));
  fft(spec, true);
  out.values() = std::move(spec);
  return out;
}

}  // namespace

PeriodicSignal lp_block(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff) {
  if (n < 0) throw DomainError("lp_block: scale must be >= 0 on the circle");
  return apply_circle_multiplier(f, [&](int k) -> double {
    if (n == 0) return std::abs(k) <= 1 ? 1.0 : 0.0;
    double s = std::ldexp(1.0, -n);
    return cutoff.w(k * s) + cutoff.w(-k * s);
  });
}

PeriodicSignal vp_smooth(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff) {
  double s = std::ldexp(1.0, -n);
  return apply_circle_multiplier(f, [&](int k) { return cutoff.v(k * s); });
}

SampledLineSignal vp_smooth(const SampledLineSignal& f, int n, const SmoothCutoff& cutoff) {
  double s = std::ldexp(1.0, -n);
  return apply_line_multiplier(f, [&](double xi) { return cutoff.v(xi * s); });
}

PeriodicSignal qn_smooth(const PeriodicSignal& f, int n, int m, const SmoothCutoff& cutoff) {
  if (m < 1) throw DomainError("qn_smooth: order must be >= 1");
  double s = std::ldexp(1.0, -n);
  return apply_circle_multiplier(f, [&](int k) { return cutoff.q(k * s, m); });
}

SampledLineSignal qn_smooth(const SampledLineSignal& f, int n, int m, const SmoothCutoff& cutoff) {
  if (m < 1) throw DomainError("qn_smooth: order must be >= 1");
  double s = std::ldexp(1.0, -n);
  return apply_line_multiplier(f, [&](double xi) { return cutoff.q(xi * s, m); });
}

PeriodicSignal reconstruct(const PeriodicSignal& f, int n, const SmoothCutoff& cutoff) {
  if (n < 0) throw DomainError("reconstruct: N must be >= 0 on the circle");
  PeriodicSignal acc = vp_smooth(f, n, cutoff);
  int top = 1;
  while (std::ldexp(1.0, top - 1) <= f.degree()) ++top;
  for (int j = n + 1; j <= top; ++j) acc += lp_block(f, j, cutoff);
  return acc;
}

LineKernelTable::LineKernelTable(const SmoothCutoff& cutoff, int log2_samples, double u_range) {
  const size_t n = size_t{1} << log2_samples;
  const double du = u_range / static_cast<double>(n);
  spacing_ = 2.0 * std::numbers::pi / u_range;

  // V(s_j) = (1/2pi) int v(u) e^{i u s_j} du with u_i = -u_range/2 + i du and
  // s_j = j spacing: the sum is an inverse DFT with a linear phase twist.
  std::vector<cplx> a(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double u = -0.5 * u_range + du * static_cast<double>(i);
    if (std::abs(u) <= 2.0) a[i] = cutoff.v(u);
  }
  fft(a, true);
  const double half_range = 0.5 * u_range;
  const double norm = du * static_cast<double>(n) / (2.0 * std::numbers::pi);

  const size_t keep = n / 2;
  values_.resize(keep);
  for (size_t j = 0; j < keep; ++j) {
    cplx twist = std::polar(1.0, -half_range * spacing_ * static_cast<double>(j));
    values_[j] = (a[j] * twist).real() * norm;
  }

  // effective support: truncate at the first window whose envelope falls
  // below threshold (V decays monotonically in envelope; what survives
  // further out is isolated discrete-transform rounding, not signal)
  const size_t window = 2048;
  size_t end = keep;
  for (size_t lo = 0; lo + window <= keep; lo += window) {
    double env = 0.0;
    for (size_t j = lo; j < lo + window; ++j) env = std::max(env, std::abs(values_[j]));
    if (env < 3e-13) {
      end = lo;
      break;
    }
  }
  support_ = static_cast<int>(end ? end - 1 : 0);
  for (size_t j = end; j < keep; ++j) values_[j] = 0.0;
  l1_ = 0.0;
  for (int j = -support_; j <= support_; ++j) l1_ += std::abs(value(j)) * spacing_;
}

double LineKernelTable::integrate(const std::function<double(double)>& g) const {
  double acc = 0.0;
  for (int j = -support_; j <= support_; ++j) acc += g(j * spacing_) * value(j);
  return acc * spacing_;
}

double qn0_residual(const PeriodicSignal& f, int n, int m, const SmoothCutoff& cutoff,
                    const LineKernelTable& table, int x_samples) {
  if (m < 1) throw DomainError("qn0_residual: order must be >= 1");
  const double scale = std::ldexp(1.0, -n);  // 2^{-n}
  PeriodicSignal smoothed = qn_smooth(f, n, m, cutoff);

  std::vector<double> coeff(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k)
    coeff[static_cast<size_t>(k)] = ((k % 2) ? -1.0 : 1.0) * static_cast<double>(binomial(m, k));

  double worst = 0.0;
  for (int i = 0; i < x_samples; ++i) {
    double x = 2.0 * std::numbers::pi * i / x_samples;
    cplx lhs = f.evaluate(std::polar(1.0, x)) - smoothed.evaluate(std::polar(1.0, x));
    // rhs: int sum_k (-1)^k C(m,k) f(x - k t) V_n(t) dt, substituted t = s 2^{-n}
    cplx rhs = 0.0;
    const double ds = table.spacing();
    for (int j = -table.support_index(); j <= table.support_index(); ++j) {
      double s = j * ds;
      double vj = table.value(j);
      if (vj == 0.0) continue;
      cplx sum = 0.0;
      for (int k = 0; k <= m; ++k)
        sum += coeff[static_cast<size_t>(k)] * f.evaluate(std::polar(1.0, x - k * s * scale));
      rhs += vj * sum;
    }
    rhs *= ds;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<KernelTableRow> kernel_table(KernelKind kind, int n_min, int n_max, int xi_samples,
                                         double xi_max, const SmoothCutoff& cutoff, int order) {
  std::vector<KernelTableRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    for (int i = 0; i < xi_samples; ++i) {
      double xi = -xi_max + 2.0 * xi_max * i / (xi_samples - 1.0);
      cplx s = kernel_symbol(kind, n, xi, cutoff, order);
      rows.push_back({n, xi, s.real(), s.imag()});
    }
  }
  return rows;
}

}  // namespace ohz
