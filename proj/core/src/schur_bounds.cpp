#include "ohz/schur_bounds.hpp"

#include <Eigen/SVD>

namespace ohz {

namespace {

// polar factor U V* of a matrix (all singular values snapped to 1)
CMat polar_factor(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double factorization_bound(const CMat& u, const CMat& v) {
  double mu = 0.0, mv = 0.0;
  for (int i = 0; i < u.rows(); ++i) mu = std::max(mu, u.row(i).norm());
  for (int j = 0; j < v.cols(); ++j) mv = std::max(mv, v.col(j).norm());
  return mu * mv;
}

}  // namespace

SchurBounds schur_norm_bounds(const CMat& phi, int trials, int sweeps, uint64_t seed) {
  SchurBounds out;
  const int p = static_cast<int>(phi.rows());
  const int q = static_cast<int>(phi.cols());
  if (p == 0 || q == 0) return out;

  // ---- lower bound: alternating polar ascent over ||X|| <= 1 ----
  OperatorSampler sampler;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(t));
    CMat x(p, q);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) x(i, j) = rng.cnormal();
    double nx = spectral_norm(x);
    if (nx < 1e-14) continue;
    x /= nx;
    double prev = 0.0;
    for (int s = 0; s < sweeps; ++s) {
      CMat y = phi.cwiseProduct(x);
      Eigen::JacobiSVD<CMat> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
      double val = svd.singularValues()(0);
      if (val > out.lower) {
        out.lower = val;
        out.witness = x;
      }
      if (val <= prev * (1.0 + 1e-12)) break;
      prev = val;
      CVec u = svd.matrixU().col(0);
      CVec v = svd.matrixV().col(0);
      // steepest-ascent direction: maximize Re sum X_ij (Phi_ij conj(u_i) v_j)
      CMat w(p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) w(i, j) = std::conj(phi(i, j) * std::conj(u(i)) * v(j));
      x = polar_factor(w);
    }
  }

  // ---- upper bound: ALS over exact factorizations phi = U V ----
  Eigen::JacobiSVD<CMat> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-13 * (sv(0) + 1.0)) ++rank;
  if (rank == 0) {
    out.upper = 0.0;
    return out;
  }
  const double phi_scale = phi.norm();
  out.upper = std::numeric_limits<double>::infinity();
  bool stabilized = false;
  Rng rng = Rng::stream(seed, 987654321u);
  for (int extra = 0; extra <= 3; ++extra) {
    int r = std::min(rank + extra, std::min(p, q) + extra);
    CMat u = svd.matrixU().leftCols(rank);
    CMat v = svd.matrixV().leftCols(rank).adjoint();
    for (int i = 0; i < rank; ++i) {
      double s = std::sqrt(sv(i));
      u.col(i) *= s;
      v.row(i) *= s;
    }
    if (r > rank) {
      // pad with near-null rows to let ALS use a larger factorization rank
      CMat u2(p, r), v2(r, q);
      u2.leftCols(rank) = u;
      v2.topRows(rank) = v;
      for (int c = rank; c < r; ++c)
        for (int i = 0; i < p; ++i) u2(i, c) = 1e-3 * rng.cnormal();
      for (int rr = rank; rr < r; ++rr)
        for (int j = 0; j < q; ++j) v2(rr, j) = 1e-3 * rng.cnormal();
      u = u2;
      v = v2;
    }
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int s = 0; s < sweeps; ++s) {
      // least-norm rows of U given V: U = Phi V^+ (minimizes every row norm)
      CMat vpinv = v.adjoint() * (v * v.adjoint()).ldlt().solve(CMat::Identity(r, r)).eval();
      u = phi * vpinv;
      CMat upinv = (u.adjoint() * u).ldlt().solve(CMat::Identity(r, r)).eval() * u.adjoint();
      v = upinv * phi;
      double resid = (u * v - phi).norm();
      if (resid <= 1e-10 * (1.0 + phi_scale)) {
        double b = factorization_bound(u, v);
        if (b < out.upper) out.upper = b;
        if (std::abs(prev_bound - b) <= 1e-9 * (1.0 + b)) {
          stabilized = true;
          break;
        }
        prev_bound = b;
      }
    }
  }
  out.converged = stabilized && std::isfinite(out.upper);
  if (!std::isfinite(out.upper)) out.upper = phi_scale;  // Frobenius fallback bound
  return out;
}

}  // namespace ohz
