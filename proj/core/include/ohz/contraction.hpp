#pragma once

#include "ohz/operator_integrals.hpp"

namespace ohz {

/// spectral_norm(T) <= 1 within tolerance.
bool check_contraction(const CMat& t, double tol = 1e-10);

/// Horner evaluation of an analytic polynomial at a contraction, with the
/// von Neumann bound ||f(T)|| <= max_{|z|=1} |f(z)| asserted on a 4096-point
/// circle grid (violations signal a broken contraction invariant).
CMat poly_func_of(const CMat& t, const FunctionModel& f);

/// Finite unitary power-dilation: block unitary on (degree+1) copies of the
/// base space with P U^k |_H = T^k for 0 <= k <= degree.
struct FiniteUnitaryDilation {
  CMat block_unitary;
  int base_dim = 0;
  int degree = 0;

  int total_dim() const { return static_cast<int>(block_unitary.rows()); }
  /// J X J*: base-space operator placed in the (0,0) block.
  CMat embed(const CMat& x) const;
  /// (0,0) block: P_H (.) |_H.
  CMat compress(const CMat& big) const;
  /// max_k ||P U^k|_H - T^k|| over 0 <= k <= degree.
  double power_residual(const CMat& t) const;
};

/// Schaffer-style block construction from the defect operators
/// D_T = (I - T*T)^{1/2}, D_{T*} = (I - TT*)^{1/2}.
FiniteUnitaryDilation dilate(const CMat& t, int degree);

/// Semi-spectral measure of T as the compression of the spectral measure of a
/// finite dilation: arc masses are PSD and add up to the identity.
struct SemiSpectralSampler {
  FiniteUnitaryDilation dilation;
  Spectrum spectrum;  // of the block unitary

  explicit SemiSpectralSampler(FiniteUnitaryDilation d);
  /// Compressed mass of the arc { e^{i theta} : theta in [lo, hi) },
  /// theta taken in (-pi, pi].
  CMat arc_mass(double lo, double hi) const;
  CMat total_mass() const;
};

/// f(R) - f(T) through the semi-spectral double operator integral with symbol
/// D f over the dilated measures of R and T, factor R - T.
struct SemiSpectralDoi {
  CMat result;
  double residual_vs_direct;  // || f(R) - f(T) - result ||
};
SemiSpectralDoi semi_spectral_doi(const FunctionModel& f, const CMat& t, const CMat& r,
                                  int degree = -1);

/// Residual of the order-m chain rule on the segment from T to R:
///   sum_k (-1)^k C(m,k) f(S_k)  vs  (m!/m^m) MOI(D^m f; E_{S_0..S_m}; T - R)
/// with S_k = T + (k/m)(R - T) (contractions by convexity). Built via
/// dilations of each S_k.
double segment_chain_residual(const FunctionModel& f, const CMat& t, const CMat& r, int m);

}  // namespace ohz
