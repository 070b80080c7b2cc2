#include "ohz/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ohz {

namespace {

void fix_phases(CMat& u) {
  for (int c = 0; c < u.cols(); ++c) {
    for (int r = 0; r < u.rows(); ++r) {
      cplx x = u(r, c);
      if (std::abs(x) > 1e-8) {
        cplx phase = x / std::abs(x);
        u.col(c) /= phase;
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition eig(const CMat& a) {
  if (!is_hermitian(a)) throw InvariantError("eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) throw InvariantError("eig: solver failed");
  SpectralDecomposition d{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(d.vectors);
  double scale = 1.0 + a.norm();
  CMat recon = d.vectors * d.eigenvalues.asDiagonal() * d.vectors.adjoint();
  if ((recon - a).norm() > 1e-10 * scale)
    throw InvariantError("eig: reconstruction residual too large");
  if ((d.vectors.adjoint() * d.vectors - CMat::Identity(a.rows(), a.cols())).norm() > 1e-12 * scale)
    throw InvariantError("eig: eigenbasis not orthonormal");
  return d;
}

Spectrum eig_normal(const CMat& a) {
  Eigen::ComplexSchur<CMat> schur(a);
  if (schur.info() != Eigen::Success) throw InvariantError("eig_normal: Schur failed");
  Spectrum s;
  s.values = schur.matrixT().diagonal();
  s.vectors = schur.matrixU();
  fix_phases(s.vectors);
  double scale = 1.0 + a.norm();
  CMat recon = s.vectors * s.values.asDiagonal() * s.vectors.adjoint();
  if ((recon - a).norm() > 1e-9 * scale)
    throw InvariantError("eig_normal: input does not look normal");
  return s;
}

Spectrum to_spectrum(const SpectralDecomposition& d) {
  Spectrum s;
  s.values = d.eigenvalues.cast<cplx>();
  s.vectors = d.vectors;
  return s;
}

CMat func_of(const CMat& a, const FunctionModel& f) {
  SpectralDecomposition d = eig(a);
  CVec fv(d.dim());
  for (int i = 0; i < d.dim(); ++i) fv(i) = f.value(d.eigenvalues(i));
  return d.vectors * fv.asDiagonal() * d.vectors.adjoint();
}

CMat func_of_unitary(const CMat& u, const FunctionModel& f) {
  Spectrum s = eig_normal(u);
  CVec fv(s.dim());
  for (int i = 0; i < s.dim(); ++i) fv(i) = f.value(s.values(i));
  return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
}

double spectral_norm(const CMat& x) {
  if (x.rows() == 0 || x.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(x);
  return svd.singularValues()(0);
}

CMat psd_sqrt(const CMat& a) {
  SpectralDecomposition d = eig(a);
  RVec r(d.dim());
  for (int i = 0; i < d.dim(); ++i) r(i) = std::sqrt(std::max(0.0, d.eigenvalues(i)));
  return d.vectors * r.cast<cplx>().asDiagonal() * d.vectors.adjoint();
}

bool is_unitary(const CMat& u, double tol) {
  return (u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm() <= tol * (1.0 + u.norm());
}

}  // namespace ohz
