#pragma once

#include "ohz/function_model.hpp"
#include "ohz/types.hpp"

namespace ohz {

/// Eigenvalues (ascending) and orthonormal eigenbasis of a Hermitian matrix;
/// the finite stand-in for a spectral measure.
struct SpectralDecomposition {
  RVec eigenvalues;
  CMat vectors;
  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// Eigen data of a normal matrix (unimodular spectrum for unitaries); also the
/// common currency of the operator-integral routines.
struct Spectrum {
  CVec values;
  CMat vectors;
  int dim() const { return static_cast<int>(values.size()); }
};

/// Hermitian eigendecomposition with a deterministic eigenvector sign
/// convention (first component of magnitude > 1e-8 made positive real).
/// Throws InvariantError when the input is not Hermitian within tolerance or
/// the reconstruction residual exceeds its bound.
SpectralDecomposition eig(const CMat& a);

/// Spectrum of a normal matrix via the complex Schur form; validates the
/// reconstruction residual (intended for unitaries at desk scale).
Spectrum eig_normal(const CMat& a);

Spectrum to_spectrum(const SpectralDecomposition& d);

/// f(A) = U diag(f(lambda)) U* for Hermitian A.
CMat func_of(const CMat& a, const FunctionModel& f);
/// f(U) for unitary U via the normal eigendecomposition.
CMat func_of_unitary(const CMat& u, const FunctionModel& f);

/// Largest singular value (full SVD; desk dimensions).
double spectral_norm(const CMat& x);

/// PSD square root with eigenvalue clamping at 0.
CMat psd_sqrt(const CMat& a);

bool is_unitary(const CMat& u, double tol = kUnitaryTol);

}  // namespace ohz
