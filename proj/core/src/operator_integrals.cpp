#include "ohz/operator_integrals.hpp"

#include <array>

namespace ohz {

CMat BivariateSymbol::matrix_form(const CVec& x_nodes, const CVec& y_nodes) const {
  CMat out(x_nodes.size(), y_nodes.size());
  for (int i = 0; i < x_nodes.size(); ++i)
    for (int j = 0; j < y_nodes.size(); ++j) out(i, j) = eval(x_nodes(i), y_nodes(j));
  return out;
}

BivariateSymbol divided_difference_symbol(const FunctionModel& f) {
  BivariateSymbol phi;
  phi.eval = [f](cplx x, cplx y) {
    std::array<cplx, 2> nodes{x, y};
    return divided_diff(f, nodes);
  };
  return phi;
}

CMat doi(const BivariateSymbol& phi, const Spectrum& a, const Spectrum& b, const CMat& x) {
  if (x.rows() != a.dim() || x.cols() != b.dim()) throw DomainError("doi: dimension mismatch");
  CMat inner = a.vectors.adjoint() * x * b.vectors;
  CMat form = phi.matrix_form(a.values, b.values);
  return a.vectors * form.cwiseProduct(inner) * b.vectors.adjoint();
}

CMat doi(const BivariateSymbol& phi, const SpectralDecomposition& a,
         const SpectralDecomposition& b, const CMat& x) {
  return doi(phi, to_spectrum(a), to_spectrum(b), x);
}

CMat moi(const FunctionModel& f, int m, const std::vector<Spectrum>& spectra,
         const std::vector<CMat>& factors, int max_order) {
  if (m < 1) throw DomainError("moi: order must be >= 1");
  if (m > max_order) throw DomainError("moi: order exceeds the cost guard");
  if (static_cast<int>(spectra.size()) != m + 1 || static_cast<int>(factors.size()) != m)
    throw DomainError("moi: need m+1 spectra and m factors");
  for (int s = 0; s < m; ++s)
    if (factors[static_cast<size_t>(s)].rows() != spectra[static_cast<size_t>(s)].dim() ||
        factors[static_cast<size_t>(s)].cols() != spectra[static_cast<size_t>(s) + 1].dim())
      throw DomainError("moi: chain dimensions incompatible");

  // factors rotated into the eigenbases on both sides
  std::vector<CMat> g(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s)
    g[static_cast<size_t>(s)] = spectra[static_cast<size_t>(s)].vectors.adjoint() *
                                factors[static_cast<size_t>(s)] *
                                spectra[static_cast<size_t>(s) + 1].vectors;

  const int n_first = spectra.front().dim();
  const int n_last = spectra.back().dim();
  CMat core = CMat::Zero(n_first, n_last);

  std::vector<cplx> nodes(static_cast<size_t>(m) + 1);
  std::vector<int> idx(static_cast<size_t>(m) + 1, 0);
  std::vector<cplx> partial(static_cast<size_t>(m) + 1, 1.0);  // product of g along the prefix

  // depth-first enumeration of index tuples, caching prefix products
  int depth = 0;
  idx[0] = -1;
  while (depth >= 0) {
    ++idx[static_cast<size_t>(depth)];
    if (idx[static_cast<size_t>(depth)] >= spectra[static_cast<size_t>(depth)].dim()) {
      --depth;
      continue;
    }
    int i = idx[static_cast<size_t>(depth)];
    nodes[static_cast<size_t>(depth)] = spectra[static_cast<size_t>(depth)].values(i);
    if (depth > 0) {
      partial[static_cast<size_t>(depth)] =
          partial[static_cast<size_t>(depth - 1)] *
          g[static_cast<size_t>(depth - 1)](idx[static_cast<size_t>(depth - 1)], i);
    }
    if (depth == m) {
      cplx weight = partial[static_cast<size_t>(m)];
      if (weight != cplx(0.0)) core(idx[0], i) += divided_diff(f, nodes) * weight;
    } else {
      ++depth;
      idx[static_cast<size_t>(depth)] = -1;
    }
  }

  return spectra.front().vectors * core * spectra.back().vectors.adjoint();
}

CMat op_finite_diff(const FunctionModel& f, const CMat& a, const CMat& k, int m) {
  if (m < 1) throw DomainError("op_finite_diff: order must be >= 1");
  CMat acc = CMat::Zero(a.rows(), a.cols());
  for (int j = 0; j <= m; ++j) {
    double sign = ((m - j) % 2) ? -1.0 : 1.0;
    acc += sign * static_cast<double>(binomial(m, j)) * func_of(a + j * k, f);
  }
  return acc;
}

CMat frechet_derivative(const FunctionModel& f, const CMat& a, const CMat& h) {
  SpectralDecomposition d = eig(a);
  return doi(divided_difference_symbol(f), d, d, h);
}

UnitarySecondDiff unitary_second_diff(const FunctionModel& f, const CMat& u, const CMat& v) {
  if (!is_unitary(u) || !is_unitary(v)) throw DomainError("unitary_second_diff: inputs not unitary");
  const CMat id = CMat::Identity(u.rows(), u.cols());
  CMat u1 = v * u;
  CMat u3 = v.adjoint() * u;

  UnitarySecondDiff out;
  out.direct = func_of_unitary(u1, f) - 2.0 * func_of_unitary(u, f) + func_of_unitary(u3, f);

  Spectrum s1 = eig_normal(u1);
  Spectrum s2 = eig_normal(u);
  Spectrum s3 = eig_normal(u3);
  CMat f12 = (v - id) * u;          // U1 - U2
  CMat f23 = (id - v.adjoint()) * u;  // U2 - U3
  CMat triple = moi(f, 2, {s1, s2, s3}, {f12, f23});
  CMat dbl = doi(divided_difference_symbol(f), s1, s3, (v - 2.0 * id + v.adjoint()) * u);
  out.via_triple = 2.0 * triple + dbl;
  out.residual = (out.direct - out.via_triple).norm();
  return out;
}

}  // namespace ohz
