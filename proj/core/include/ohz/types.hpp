#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ohz {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_hermitian(const CMat& a, double tol = kHermTol) {
  double scale = a.norm();
  return (a - a.adjoint()).norm() <= tol * (1.0 + scale);
}

inline CMat hermitian_part(const CMat& a) { return 0.5 * (a + a.adjoint()); }

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace ohz
