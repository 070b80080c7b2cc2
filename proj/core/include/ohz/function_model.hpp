#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ohz/types.hpp"

namespace ohz {

enum class FnDomain { Line, Circle };

/// Evaluable scalar function with derivative access, an optional
/// Fourier-support bound and a domain tag (line or circle).
///
/// Models backed by (Laurent) polynomial coefficients additionally expose an
/// exact divided-difference path (see divided_diff.hpp); everything else goes
/// through the confluent Newton table using `derivative`.
class FunctionModel {
 public:
  static FunctionModel identity();
  static FunctionModel constant(cplx c);
  static FunctionModel power(int k);              // t^k on the line, k >= 0
  static FunctionModel polynomial(std::vector<double> coeffs);  // sum c_k t^k
  static FunctionModel abs_power(double alpha);   // |t|^alpha, alpha > 0
  static FunctionModel exponential();
  static FunctionModel sine();
  static FunctionModel cosine();
  static FunctionModel lacunary(int terms);       // sum_{n=1}^{terms} 2^{-n} cos(2^n t)
  // Circle models: f(z) = sum_{k=k_min}^{k_min+len-1} c_k z^k evaluated on T.
  static FunctionModel laurent(std::vector<cplx> coeffs, int k_min);
  static FunctionModel analytic_poly(std::vector<cplx> coeffs);
  // User-supplied evaluator with closed-form derivatives (order passed in).
  static FunctionModel custom(std::function<cplx(cplx, int)> eval_deriv, std::string id,
                              bool bounded = false, FnDomain domain = FnDomain::Line);
  // User-supplied value-only evaluator; derivatives fall back to central
  // finite differences (flagged via fd_derivatives()).
  static FunctionModel custom_fd(std::function<cplx(cplx)> value, std::string id,
                                 bool bounded = false, FnDomain domain = FnDomain::Line);
  // Parse a function id string as used in run configs, e.g. "abs_power:0.5",
  // "poly:0,0,1", "zpoly:0,1", "lacunary:12".
  static FunctionModel from_id(const std::string& id);

  cplx value(cplx x) const;
  cplx derivative(cplx x, int order) const;

  FnDomain domain() const { return domain_; }
  std::optional<double> band_limit() const { return band_limit_; }
  bool bounded() const { return bounded_; }
  const std::string& id() const { return id_; }

  bool has_exact_divdiff() const { return exact_divdiff_; }
  bool fd_derivatives() const { return fd_derivatives_; }
  // Only valid when has_exact_divdiff().
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  int k_min() const { return k_min_; }
  int degree() const { return k_min_ + static_cast<int>(coeffs_.size()) - 1; }

 private:
  enum class Kind { Poly, Laurent, AbsPower, Exp, Sin, Cos, Lacunary, Custom };
  FunctionModel() = default;

  Kind kind_ = Kind::Poly;
  FnDomain domain_ = FnDomain::Line;
  std::vector<cplx> coeffs_;   // Poly/Laurent coefficients, ascending in k
  int k_min_ = 0;
  double alpha_ = 0.0;         // AbsPower exponent
  int terms_ = 0;              // Lacunary term count
  std::function<cplx(cplx, int)> custom_;
  std::optional<double> band_limit_;
  bool bounded_ = false;
  bool exact_divdiff_ = false;
  bool fd_derivatives_ = false;
  std::string id_;
};

}  // namespace ohz
