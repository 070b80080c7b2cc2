#include "ohz/contraction.hpp"

#include <cmath>
#include <numbers>

namespace ohz {

bool check_contraction(const CMat& t, double tol) { return spectral_norm(t) <= 1.0 + tol; }

CMat poly_func_of(const CMat& t, const FunctionModel& f) {
  if (!f.has_exact_divdiff() || f.k_min() < 0)
    throw DomainError("poly_func_of: analytic polynomial required");
  if (!check_contraction(t)) throw InvariantError("poly_func_of: input is not a contraction");
  const auto& c = f.coeffs();
  const int n = static_cast<int>(t.rows());
  CMat acc = CMat::Zero(n, n);
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    acc = acc * t;
    acc += c[static_cast<size_t>(k)] * CMat::Identity(n, n);
  }
  double circle_max = 0.0;
  for (int i = 0; i < 4096; ++i) {
    double th = 2.0 * std::numbers::pi * i / 4096;
    circle_max = std::max(circle_max, std::abs(f.value(std::polar(1.0, th))));
  }
  if (spectral_norm(acc) > (1.0 + 1e-8) * circle_max)
    throw InvariantError("poly_func_of: von Neumann bound violated");
  return acc;
}

CMat FiniteUnitaryDilation::embed(const CMat& x) const {
  CMat big = CMat::Zero(total_dim(), total_dim());
  big.topLeftCorner(base_dim, base_dim) = x;
  return big;
}

CMat FiniteUnitaryDilation::compress(const CMat& big) const {
  return big.topLeftCorner(base_dim, base_dim);
}

double FiniteUnitaryDilation::power_residual(const CMat& t) const {
  CMat power_big = CMat::Identity(total_dim(), total_dim());
  CMat power_small = CMat::Identity(base_dim, base_dim);
  double worst = 0.0;
  for (int k = 0; k <= degree; ++k) {
    worst = std::max(worst, (compress(power_big) - power_small).norm());
    power_big = power_big * block_unitary;
    power_small = power_small * t;
  }
  return worst;
}

namespace {

// PSD square root with a floor: defect eigenvalues at rounding level square-
// root into O(1e-8) junk that breaks the intertwining T D_T = D_{T*} T, so
// anything below the floor is treated as an exact zero.
CMat defect_sqrt(const CMat& a) {
  SpectralDecomposition d = eig(a);
  RVec r(d.dim());
  for (int i = 0; i < d.dim(); ++i)
    r(i) = d.eigenvalues(i) < 1e-12 ? 0.0 : std::sqrt(d.eigenvalues(i));
  return d.vectors * r.cast<cplx>().asDiagonal() * d.vectors.adjoint();
}

}  // namespace

FiniteUnitaryDilation dilate(const CMat& t, int degree) {
  if (degree < 1) throw DomainError("dilate: degree must be >= 1");
  if (!check_contraction(t)) throw InvariantError("dilate: input is not a contraction");
  const int n = static_cast<int>(t.rows());
  const CMat id = CMat::Identity(n, n);
  CMat defect = defect_sqrt((id - t.adjoint() * t).eval());        // D_T
  CMat defect_adj = defect_sqrt((id - t * t.adjoint()).eval());    // D_{T*}

  const int blocks = degree + 1;
  CMat u = CMat::Zero(blocks * n, blocks * n);
  auto block = [&](int r, int c) { return u.block(r * n, c * n, n, n); };
  block(0, 0) = t;
  block(0, degree) = defect_adj;
  block(1, 0) = defect;
  block(1, degree) = -t.adjoint();
  for (int r = 2; r < blocks; ++r) block(r, r - 1) = id;

  FiniteUnitaryDilation d{u, n, degree};
  double scale = 1.0 + u.norm();
  if ((u.adjoint() * u - CMat::Identity(blocks * n, blocks * n)).norm() > 1e-10 * scale)
    throw InvariantError("dilate: defect factorization failed to produce a unitary");
  if (d.power_residual(t) > 1e-10 * (1.0 + t.norm()))
    throw InvariantError("dilate: power-dilation residual too large");
  return d;
}

SemiSpectralSampler::SemiSpectralSampler(FiniteUnitaryDilation d)
    : dilation(std::move(d)), spectrum(eig_normal(dilation.block_unitary)) {}

CMat SemiSpectralSampler::arc_mass(double lo, double hi) const {
  const int big = spectrum.dim();
  CMat proj = CMat::Zero(big, big);
  for (int i = 0; i < big; ++i) {
    double th = std::arg(spectrum.values(i));
    if (th >= lo && th < hi)
      proj += spectrum.vectors.col(i) * spectrum.vectors.col(i).adjoint();
  }
  return dilation.compress(proj);
}

CMat SemiSpectralSampler::total_mass() const {
  return arc_mass(-std::numbers::pi - 1e-12, std::numbers::pi + 1e-12);
}

SemiSpectralDoi semi_spectral_doi(const FunctionModel& f, const CMat& t, const CMat& r,
                                  int degree) {
  if (!f.has_exact_divdiff() || f.k_min() < 0)
    throw DomainError("semi_spectral_doi: analytic polynomial required");
  if (degree < 0) degree = f.degree() + 1;
  FiniteUnitaryDilation dil_r = dilate(r, degree);
  FiniteUnitaryDilation dil_t = dilate(t, degree);
  Spectrum spec_r = eig_normal(dil_r.block_unitary);
  Spectrum spec_t = eig_normal(dil_t.block_unitary);

  CMat middle = CMat::Zero(dil_r.total_dim(), dil_t.total_dim());
  middle.topLeftCorner(dil_r.base_dim, dil_t.base_dim) = r - t;

  CMat big = doi(divided_difference_symbol(f), spec_r, spec_t, middle);
  SemiSpectralDoi out;
  out.result = big.topLeftCorner(dil_r.base_dim, dil_t.base_dim);
  CMat direct = poly_func_of(r, f) - poly_func_of(t, f);
  out.residual_vs_direct = (direct - out.result).norm();
  return out;
}

double segment_chain_residual(const FunctionModel& f, const CMat& t, const CMat& r, int m) {
  if (m < 1) throw DomainError("segment_chain_residual: order must be >= 1");
  if (!f.has_exact_divdiff() || f.k_min() < 0)
    throw DomainError("segment_chain_residual: analytic polynomial required");
  const int degree = f.degree() + 1;
  const int n = static_cast<int>(t.rows());

  // S_k on the segment [T, R]; contractions by convexity
  std::vector<CMat> points;
  for (int k = 0; k <= m; ++k) {
    CMat s = t + (static_cast<double>(k) / m) * (r - t);
    if (!check_contraction(s))
      throw InvariantError("segment_chain_residual: intermediate point is not a contraction");
    points.push_back(std::move(s));
  }

  CMat lhs = CMat::Zero(n, n);
  for (int k = 0; k <= m; ++k) {
    double sign = (k % 2) ? -1.0 : 1.0;
    lhs += sign * static_cast<double>(binomial(m, k)) * poly_func_of(points[static_cast<size_t>(k)], f);
  }

  std::vector<FiniteUnitaryDilation> dil;
  std::vector<Spectrum> spectra;
  for (const CMat& s : points) {
    dil.push_back(dilate(s, degree));
    spectra.push_back(eig_normal(dil.back().block_unitary));
  }
  const int big = dil.front().total_dim();
  CMat factor = CMat::Zero(big, big);
  factor.topLeftCorner(n, n) = t - r;
  std::vector<CMat> factors(static_cast<size_t>(m), factor);

  double mfac = 1.0;
  for (int i = 2; i <= m; ++i) mfac *= i;
  double scale = mfac / std::pow(static_cast<double>(m), m);
  CMat rhs_big = moi(f, m, spectra, factors);
  CMat rhs = scale * rhs_big.topLeftCorner(n, n);
  return (lhs - rhs).norm();
}

}  // namespace ohz
