#pragma once

#include <functional>
#include <string>

#include "ohz/cutoff.hpp"
#include "ohz/function_model.hpp"
#include "ohz/signals.hpp"

namespace ohz {

/// Grid over which the suprema below are evaluated. Suprema are honest lower
/// bounds on the declared grid; refine() doubles the resolution.
struct GridSpec {
  int base_points = 2048;   // base points x (line) or zeta angles (circle)
  int step_points = 512;    // log-spaced steps t in [t_min, t_max]
  double t_min = 1e-6;
  double t_max = 10.0;
  double x_min = -10.0;
  double x_max = 10.0;

  GridSpec refined() const {
    GridSpec g = *this;
    g.base_points *= 2;
    g.step_points *= 2;
    return g;
  }
  double step(int i) const;  // i-th log-spaced step
  double base(int i) const;  // i-th base point
};

struct SeminormReport {
  double value = 0.0;
  double t_star = 0.0;  // argmax step (line) or |1 - tau| (circle)
  double x_star = 0.0;  // argmax base point (line) or arg zeta (circle)
  GridSpec grid;
  int order = 1;
};

/// Nondecreasing gauge omega with order-m doubling metadata.
class ModulusOfContinuity {
 public:
  static ModulusOfContinuity power(double alpha);  // t^alpha (order ceil(alpha))
  static ModulusOfContinuity constant(double c);
  static ModulusOfContinuity tabulated(std::function<double(double)> eval, std::string id,
                                       int order);
  static ModulusOfContinuity from_id(const std::string& id);

  double operator()(double t) const { return eval_(t); }
  int order() const { return order_; }
  const std::string& id() const { return id_; }
  bool subadditive() const { return subadditive_; }
  double doubling_constant() const { return doubling_constant_; }  // claimed kappa

  /// Grid check of positivity, monotonicity, vanishing at 0, the order-m
  /// doubling inequality, and subadditivity when claimed.
  bool validate(const GridSpec& grid = {}) const;

 private:
  std::function<double(double)> eval_;
  int order_ = 1;
  bool subadditive_ = false;
  double doubling_constant_ = 0.0;  // 0 = unknown
  std::string id_;
};

/// m-th forward difference sum_{k=0}^m (-1)^{m-k} C(m,k) f(x + k t); m = 0
/// returns f(x).
cplx finite_diff(const FunctionModel& f, double t, int m, double x);
/// Circle variant with the rotation difference (Delta_tau f)(zeta) = f(tau zeta) - f(zeta).
cplx finite_diff_circle(const FunctionModel& f, cplx tau, int m, cplx zeta);

/// Grid supremum of |t|^{-alpha} |Delta^n_t f| with n = floor(alpha) + 1
/// (Zygmund route at integer alpha). Dispatches on f's domain.
SeminormReport holder_seminorm(const FunctionModel& f, double alpha, const GridSpec& grid = {});

/// Grid supremum of ||Delta^m_t f||_inf / omega(t) (line) or its circle
/// analogue over tau.
SeminormReport lambda_omega_norm(const FunctionModel& f, const ModulusOfContinuity& omega, int m,
                                 const GridSpec& grid = {});

/// lambda_omega_norm with the refinement loop: the grid doubles (both base
/// points and steps) until the relative change of the supremum drops below
/// rel_tol, up to max_rounds doublings.
SeminormReport lambda_omega_norm_refined(const FunctionModel& f, const ModulusOfContinuity& omega,
                                         int m, GridSpec grid = {}, double rel_tol = 1e-3,
                                         int max_rounds = 3);

/// omega_{f,m}(x): grid supremum of ||Delta_h^m f||_inf over 0 < h <= x.
/// The h-grid is a fixed global log grid clipped to (0, x], so the result is
/// nondecreasing in x.
double modulus_of_function(const FunctionModel& f, int m, double x, const GridSpec& grid = {});

/// omega_{*,m}(x) = x^m int_x^inf omega(t) t^{-m-1} dt, evaluated as
/// int_1^inf omega(sx) s^{-m-1} ds by adaptive Simpson over dyadic blocks.
/// Returns +inf when the dyadic tail shows no decay.
double omega_star(const ModulusOfContinuity& omega, int m, double x);

struct DoublingReport {
  double kappa_hat = 0.0;
  bool pass = false;        // kappa_hat <= 2^m within slack
  bool ob_applicable = false;  // kappa_hat < 2
  double ob_factor = 0.0;      // kappa/(1 - log2 kappa)
  bool ob_holds = false;       // omega_* <= ob_factor * omega on the grid
};
DoublingReport doubling_check(const ModulusOfContinuity& omega, int m, const GridSpec& grid = {});

/// Circle Lambda_{omega,m} seminorm of a trigonometric polynomial on a
/// uniform 2^log2_n grid with grid rotations as steps. One FFT plus O(N) per
/// step, so it stays cheap for large degrees.
double circle_grid_seminorm(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m,
                            int log2_n = 14, int steps = 200);

/// ||f - f*V_n||_inf / (omega(2^{-n}) ||f||_{Lambda_{omega,m}}) for a circle
/// polynomial; 0 when the seminorm vanishes. The second overload reuses a
/// precomputed seminorm value across an n-sweep.
double vp_error_ratio(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m, int n,
                      const SmoothCutoff& cutoff);
double vp_error_ratio(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m, int n,
                      const SmoothCutoff& cutoff, double seminorm_value);

/// Degree-d Fourier interpolation of samples of a 2pi-periodic function; used
/// to push non-polynomial periodic functions through the spectral operations.
PeriodicSignal periodic_from_function(const std::function<double(double)>& f, int degree,
                                      int samples = 0);

}  // namespace ohz
