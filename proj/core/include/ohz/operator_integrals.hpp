#pragma once

#include <functional>
#include <vector>

#include "ohz/divided_diff.hpp"
#include "ohz/spectral.hpp"

namespace ohz {

/// Bivariate symbol phi(x, y) with an entrywise matrix form on given spectra.
struct BivariateSymbol {
  std::function<cplx(cplx, cplx)> eval;
  CMat matrix_form(const CVec& x_nodes, const CVec& y_nodes) const;
};

/// phi = D f (first divided difference of f), confluent on the diagonal.
BivariateSymbol divided_difference_symbol(const FunctionModel& f);

/// Double operator integral: U_a (Phi o (U_a* X U_b)) U_b*, the finite-spectra
/// transformer with symbol phi; linear in X.
CMat doi(const BivariateSymbol& phi, const Spectrum& a, const Spectrum& b, const CMat& x);
CMat doi(const BivariateSymbol& phi, const SpectralDecomposition& a,
         const SpectralDecomposition& b, const CMat& x);

/// Multiple operator integral with symbol D^m f: nested eigen-sum over index
/// tuples with the chained rank-one compressions of the m factors.
/// spectra.size() == m + 1, factors.size() == m; cost O(n^{m+1}).
/// m > 4 is rejected unless max_order is raised.
CMat moi(const FunctionModel& f, int m, const std::vector<Spectrum>& spectra,
         const std::vector<CMat>& factors, int max_order = 4);

/// sum_{j=0}^m (-1)^{m-j} C(m,j) f(A + jK) for Hermitian A, K.
CMat op_finite_diff(const FunctionModel& f, const CMat& a, const CMat& k, int m);

/// Daleckii-Krein form: doi(D f, A, A, H).
CMat frechet_derivative(const FunctionModel& f, const CMat& a, const CMat& h);

/// Second-order difference of f along a unitary twist: the direct value
/// f(VU) - 2 f(U) + f(V*U) against its representation as
/// 2 MOI(D^2 f; (V-I)U, (I-V*)U) + DOI(D f; (V - 2I + V*)U).
struct UnitarySecondDiff {
  CMat direct;
  CMat via_triple;
  double residual;
};
UnitarySecondDiff unitary_second_diff(const FunctionModel& f, const CMat& u, const CMat& v);

}  // namespace ohz
