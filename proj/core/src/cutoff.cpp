#include "ohz/cutoff.hpp"

#include <cmath>

namespace ohz {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void check_scale(int n) {
  if (n < -SmoothCutoff::kMaxScale || n > SmoothCutoff::kMaxScale)
    throw DomainError("kernel scale out of the clamped range |n| <= 64");
}

}  // namespace

SmoothCutoff::SmoothCutoff() = default;

double SmoothCutoff::h(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = bump(t);
  double b = bump(1.0 - t);
  return a / (a + b);
}

double SmoothCutoff::w(double x) const {
  if (x <= 0.5 || x >= 2.0) return 0.0;
  if (x <= 1.0) return h(2.0 * x - 1.0);
  return 1.0 - h(x - 1.0);
}

double SmoothCutoff::v(double x) const {
  double a = std::abs(x);
  return a <= 1.0 ? 1.0 : w(a);
}

double SmoothCutoff::q(double x, int m) const {
  if (m < 1) throw DomainError("q: order must be >= 1");
  double acc = 0.0;
  for (int k = 1; k <= m; ++k) {
    double sign = (k % 2 == 1) ? 1.0 : -1.0;
    acc += sign * static_cast<double>(binomial(m, k)) * v(k * x);
  }
  return acc;
}

std::vector<std::pair<double, double>> SmoothCutoff::log_grid_samples(int count) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  // log-spaced over the support neighbourhood [2^-2, 2^2]
  for (int i = 0; i < count; ++i) {
    double e = -2.0 + 4.0 * i / (count - 1.0);
    double x = std::pow(2.0, e);
    out.emplace_back(x, w(x));
  }
  return out;
}

cplx kernel_symbol(KernelKind kind, int n, double xi, const SmoothCutoff& cutoff, int order) {
  check_scale(n);
  double scale = std::ldexp(1.0, -n);  // 2^{-n}
  switch (kind) {
    case KernelKind::W: return cutoff.w(xi * scale);
    case KernelKind::Wsharp: return cutoff.w(-xi * scale);
    case KernelKind::V: return cutoff.v(xi * scale);
    case KernelKind::Q: return cutoff.q(xi * scale, order);
  }
  throw DomainError("kernel_symbol: unknown kind");
}

cplx FrequencyKernel::symbol(double xi, const SmoothCutoff& cutoff) const {
  return kernel_symbol(kind, n, xi, cutoff, order);
}

cplx FrequencyKernel::circle_coefficient(int k, const SmoothCutoff& cutoff) const {
  if (n < 0) throw DomainError("circle kernels need scale n >= 0");
  if (kind == KernelKind::W && n == 0) return std::abs(k) <= 1 ? 1.0 : 0.0;
  if (kind == KernelKind::Wsharp && n == 0) return std::abs(k) <= 1 ? 1.0 : 0.0;
  return symbol(static_cast<double>(k), cutoff);
}

}  // namespace ohz
