#include "ohz/divided_diff.hpp"

#include <algorithm>
#include <cmath>

namespace ohz {

cplx complete_homogeneous(int q, std::span<const cplx> values) {
  if (q < 0) return 0.0;
  std::vector<cplx> h(static_cast<size_t>(q) + 1, 0.0);
  h[0] = 1.0;
  for (const cplx& x : values)
    for (int j = 1; j <= q; ++j) h[static_cast<size_t>(j)] += x * h[static_cast<size_t>(j - 1)];
  return h[static_cast<size_t>(q)];
}

namespace {

// Exact divided difference of a Laurent polynomial:
//   D^r[z^k]      = h_{k-r}(nodes)                       for k >= 0,
//   D^r[z^{-m}]   = (-1)^r (prod nodes)^{-1} h_{m-1}(1/nodes)   for m >= 1.
cplx exact_laurent(const FunctionModel& f, std::span<const cplx> nodes) {
  const int r = static_cast<int>(nodes.size()) - 1;
  const auto& c = f.coeffs();
  const int kmin = f.k_min();
  const int kmax = kmin + static_cast<int>(c.size()) - 1;

  cplx acc = 0.0;
  if (kmax >= r) {
    int qmax = kmax - r;
    std::vector<cplx> h(static_cast<size_t>(qmax) + 1, 0.0);
    h[0] = 1.0;
    for (const cplx& x : nodes)
      for (int j = 1; j <= qmax; ++j) h[static_cast<size_t>(j)] += x * h[static_cast<size_t>(j - 1)];
    for (int k = std::max(kmin, r); k <= kmax; ++k)
      acc += c[static_cast<size_t>(k - kmin)] * h[static_cast<size_t>(k - r)];
  }
  if (kmin < 0) {
    int qmax = -kmin - 1;
    std::vector<cplx> inv(nodes.size());
    cplx prod = 1.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == cplx(0.0)) throw DomainError("divided_diff: Laurent pole at a node");
      inv[i] = 1.0 / nodes[i];
      prod *= nodes[i];
    }
    std::vector<cplx> h(static_cast<size_t>(qmax) + 1, 0.0);
    h[0] = 1.0;
    for (const cplx& x : inv)
      for (int j = 1; j <= qmax; ++j) h[static_cast<size_t>(j)] += x * h[static_cast<size_t>(j - 1)];
    double sign = (r % 2) ? -1.0 : 1.0;
    for (int k = kmin; k <= std::min(kmax, -1); ++k)
      acc += c[static_cast<size_t>(k - kmin)] * sign / prod * h[static_cast<size_t>(-k - 1)];
  }
  return acc;
}

}  // namespace

cplx divided_diff_newton(const FunctionModel& f, std::span<const cplx> nodes) {
  const int p = static_cast<int>(nodes.size());
  if (p == 0) throw DomainError("divided_diff: no nodes");
  std::vector<cplx> z(nodes.begin(), nodes.end());
  std::sort(z.begin(), z.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double tol = confluence_tol(nodes);

  // table[len][i] = D^{len} f over z_i .. z_{i+len}
  std::vector<std::vector<cplx>> table(static_cast<size_t>(p));
  table[0].resize(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) table[0][static_cast<size_t>(i)] = f.value(z[static_cast<size_t>(i)]);
  double factorial = 1.0;
  for (int len = 1; len < p; ++len) {
    factorial *= len;
    table[static_cast<size_t>(len)].resize(static_cast<size_t>(p - len));
    for (int i = 0; i + len < p; ++i) {
      cplx lo = z[static_cast<size_t>(i)];
      cplx hi = z[static_cast<size_t>(i + len)];
      if (std::abs(hi - lo) <= tol) {
        double diam = 0.0;
        for (int a = i; a <= i + len; ++a)
          for (int b = a + 1; b <= i + len; ++b)
            diam = std::max(diam, std::abs(z[static_cast<size_t>(a)] - z[static_cast<size_t>(b)]));
        if (diam > tol) throw DomainError("divided_diff: irregular confluent cluster");
        table[static_cast<size_t>(len)][static_cast<size_t>(i)] =
            f.derivative(lo, len) / factorial;
      } else {
        table[static_cast<size_t>(len)][static_cast<size_t>(i)] =
            (table[static_cast<size_t>(len - 1)][static_cast<size_t>(i + 1)] -
             table[static_cast<size_t>(len - 1)][static_cast<size_t>(i)]) /
            (hi - lo);
      }
    }
  }
  return table[static_cast<size_t>(p - 1)][0];
}

cplx divided_diff(const FunctionModel& f, std::span<const cplx> nodes) {
  if (nodes.empty()) throw DomainError("divided_diff: no nodes");
  if (f.has_exact_divdiff()) return exact_laurent(f, nodes);
  return divided_diff_newton(f, nodes);
}

DividedDiffTable divided_diff_table(const FunctionModel& f, std::span<const cplx> nodes) {
  DividedDiffTable t;
  t.nodes.assign(nodes.begin(), nodes.end());
  t.order = static_cast<int>(nodes.size()) - 1;
  t.value = divided_diff(f, nodes);
  return t;
}

cplx divided_diff_product(const FunctionModel& f, std::span<const cplx> nodes) {
  const int p = static_cast<int>(nodes.size());
  cplx acc = 0.0;
  for (int k = 0; k < p; ++k) {
    cplx denom = 1.0;
    for (int j = 0; j < p; ++j) {
      if (j == k) continue;
      cplx d = nodes[static_cast<size_t>(k)] - nodes[static_cast<size_t>(j)];
      if (d == cplx(0.0)) throw DomainError("divided_diff_product: repeated node");
      denom *= d;
    }
    acc += f.value(nodes[static_cast<size_t>(k)]) / denom;
  }
  return acc;
}

}  // namespace ohz
