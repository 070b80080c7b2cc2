#include "ohz/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ohz {

double GridSpec::step(int i) const {
  double r = static_cast<double>(i) / (step_points - 1.0);
  return t_min * std::pow(t_max / t_min, r);
}

double GridSpec::base(int i) const {
  return x_min + (x_max - x_min) * i / (base_points - 1.0);
}

ModulusOfContinuity ModulusOfContinuity::power(double alpha) {
  if (alpha <= 0.0) throw DomainError("modulus power: alpha must be positive");
  ModulusOfContinuity om;
  om.eval_ = [alpha](double t) { return std::pow(t, alpha); };
  om.order_ = static_cast<int>(std::ceil(alpha - 1e-12));
  om.subadditive_ = alpha <= 1.0;
  om.doubling_constant_ = std::pow(2.0, alpha);
  om.id_ = "power:" + std::to_string(alpha);
  return om;
}

ModulusOfContinuity ModulusOfContinuity::constant(double c) {
  if (c <= 0.0) throw DomainError("modulus constant: must be positive");
  ModulusOfContinuity om;
  om.eval_ = [c](double) { return c; };
  om.order_ = 1;
  om.subadditive_ = true;
  om.doubling_constant_ = 1.0;
  om.id_ = "const:" + std::to_string(c);
  return om;
}

ModulusOfContinuity ModulusOfContinuity::tabulated(std::function<double(double)> eval,
                                                   std::string id, int order) {
  ModulusOfContinuity om;
  om.eval_ = std::move(eval);
  om.order_ = order;
  om.id_ = std::move(id);
  return om;
}

ModulusOfContinuity ModulusOfContinuity::from_id(const std::string& id) {
  auto colon = id.find(':');
  std::string head = id.substr(0, colon);
  if (head == "power") return power(std::stod(id.substr(colon + 1)));
  if (head == "const") return constant(std::stod(id.substr(colon + 1)));
  throw DomainError("unknown modulus id '" + id + "'");
}

bool ModulusOfContinuity::validate(const GridSpec& grid) const {
  double prev = 0.0;
  for (int i = 0; i < grid.step_points; ++i) {
    double t = grid.step(i);
    double v = eval_(t);
    if (!(v > 0.0)) return false;
    if (v + 1e-12 * (1.0 + v) < prev) return false;
    prev = v;
    if (eval_(2.0 * t) > std::ldexp(1.0, order_) * v + 1e-12) return false;
  }
  // vanishing at 0 within grid resolution: smallest sample must be small
  // relative to the largest, unless the modulus is (near-)constant.
  double lo = eval_(grid.t_min), hi = eval_(grid.t_max);
  if (lo > hi + 1e-12) return false;
  if (subadditive_) {
    for (int i = 0; i < grid.step_points; i += 7) {
      double x = grid.step(i);
      for (int j = 0; j < grid.step_points; j += 13) {
        double y = grid.step(j);
        if (eval_(x + y) > eval_(x) + eval_(y) + 1e-12) return false;
      }
    }
  }
  return true;
}

cplx finite_diff(const FunctionModel& f, double t, int m, double x) {
  if (m < 0) throw DomainError("finite_diff: negative order");
  cplx acc = 0.0;
  for (int k = 0; k <= m; ++k) {
    double sign = ((m - k) % 2) ? -1.0 : 1.0;
    acc += sign * static_cast<double>(binomial(m, k)) * f.value(x + k * t);
  }
  return acc;
}

cplx finite_diff_circle(const FunctionModel& f, cplx tau, int m, cplx zeta) {
  if (m < 0) throw DomainError("finite_diff_circle: negative order");
  cplx acc = 0.0;
  cplx rot = zeta;
  for (int k = 0; k <= m; ++k) {
    double sign = ((m - k) % 2) ? -1.0 : 1.0;
    acc += sign * static_cast<double>(binomial(m, k)) * f.value(rot);
    rot *= tau;
  }
  return acc;
}

namespace {

// shared sweep: sup over (t, x) grids of |Delta^m_t f(x)| / gauge(t)
SeminormReport sweep_line(const FunctionModel& f, int m, const GridSpec& grid,
                          const std::function<double(double)>& gauge) {
  SeminormReport rep;
  rep.grid = grid;
  rep.order = m;
  for (int it = 0; it < grid.step_points; ++it) {
    double t = grid.step(it);
    double g = gauge(t);
    if (!(g > 0.0)) throw DomainError("seminorm: vanishing gauge at a grid step");
    for (int ix = 0; ix < grid.base_points; ++ix) {
      double x = grid.base(ix);
      double r = std::abs(finite_diff(f, t, m, x)) / g;
      if (r > rep.value) {
        rep.value = r;
        rep.t_star = t;
        rep.x_star = x;
      }
    }
  }
  return rep;
}

SeminormReport sweep_circle(const FunctionModel& f, int m, const GridSpec& grid,
                            const std::function<double(double)>& gauge) {
  SeminormReport rep;
  rep.grid = grid;
  rep.order = m;
  // tau = exp(i phi), phi log-spaced up to pi (both rotation senses);
  // gauge argument is |1 - tau|.
  for (int it = 0; it < grid.step_points; ++it) {
    double r = static_cast<double>(it) / (grid.step_points - 1.0);
    double phi = grid.t_min * std::pow(std::numbers::pi / grid.t_min, r);
    for (double sign : {1.0, -1.0}) {
      cplx tau = std::polar(1.0, sign * phi);
      double dist = std::abs(1.0 - tau);
      double g = gauge(dist);
      if (!(g > 0.0)) throw DomainError("seminorm: vanishing gauge at a grid step");
      for (int iz = 0; iz < grid.base_points; ++iz) {
        double th = 2.0 * std::numbers::pi * iz / grid.base_points;
        cplx zeta = std::polar(1.0, th);
        double val = std::abs(finite_diff_circle(f, tau, m, zeta)) / g;
        if (val > rep.value) {
          rep.value = val;
          rep.t_star = dist;
          rep.x_star = th;
        }
      }
    }
  }
  return rep;
}

SeminormReport sweep(const FunctionModel& f, int m, const GridSpec& grid,
                     const std::function<double(double)>& gauge) {
  return f.domain() == FnDomain::Circle ? sweep_circle(f, m, grid, gauge)
                                        : sweep_line(f, m, grid, gauge);
}

}  // namespace

SeminormReport holder_seminorm(const FunctionModel& f, double alpha, const GridSpec& grid) {
  if (alpha <= 0.0) throw DomainError("holder_seminorm: alpha must be positive");
  if (grid.step_points < 2 || grid.base_points < 2) throw DomainError("holder_seminorm: empty grid");
  int n = static_cast<int>(std::floor(alpha)) + 1;
  return sweep(f, n, grid, [alpha](double t) { return std::pow(t, alpha); });
}

SeminormReport lambda_omega_norm(const FunctionModel& f, const ModulusOfContinuity& omega, int m,
                                 const GridSpec& grid) {
  if (m < 1) throw DomainError("lambda_omega_norm: order must be >= 1");
  return sweep(f, m, grid, [&omega](double t) { return omega(t); });
}

SeminormReport lambda_omega_norm_refined(const FunctionModel& f, const ModulusOfContinuity& omega,
                                         int m, GridSpec grid, double rel_tol, int max_rounds) {
  // grids are not nested under doubling, so the honest refined value is the
  // supremum over the union of the visited grids
  SeminormReport best = lambda_omega_norm(f, omega, m, grid);
  double prev = best.value;
  for (int round = 0; round < max_rounds; ++round) {
    grid = grid.refined();
    SeminormReport next = lambda_omega_norm(f, omega, m, grid);
    if (next.value > best.value) best = next;
    double change = std::abs(next.value - prev);
    prev = next.value;
    if (change <= rel_tol * (best.value + 1e-300)) break;
  }
  return best;
}

double modulus_of_function(const FunctionModel& f, int m, double x, const GridSpec& grid) {
  if (!(x > 0.0)) throw DomainError("modulus_of_function: x must be positive");
  double best = 0.0;
  for (int it = 0; it < grid.step_points; ++it) {
    double h = grid.step(it);
    if (h > x) break;
    for (int ix = 0; ix < grid.base_points; ++ix)
      best = std::max(best, std::abs(finite_diff(f, h, m, grid.base(ix))));
  }
  // include the endpoint h = x itself
  for (int ix = 0; ix < grid.base_points; ++ix)
    best = std::max(best, std::abs(finite_diff(f, x, m, grid.base(ix))));
  return best;
}

namespace {

double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  double acc = g(a) + g(b);
  for (int i = 1; i < n; ++i) acc += g(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double adaptive_block(const std::function<double(double)>& g, double a, double b) {
  double coarse = simpson(g, a, b, 32);
  double fine = simpson(g, a, b, 64);
  int n = 128;
  while (std::abs(fine - coarse) > 1e-11 * (1.0 + std::abs(fine)) && n <= 1 << 16) {
    coarse = fine;
    fine = simpson(g, a, b, n);
    n *= 2;
  }
  return fine;
}

}  // namespace

double omega_star(const ModulusOfContinuity& omega, int m, double x) {
  if (!(x > 0.0)) throw DomainError("omega_star: x must be positive");
  if (m < 1) throw DomainError("omega_star: order must be >= 1");
  auto integrand = [&](double s) { return omega(s * x) / std::pow(s, m + 1); };
  double acc = 0.0;
  double lo = 1.0;
  int stale = 0;
  int steady = 0;
  double prev_block = -1.0;
  double prev_ratio = -1.0;
  for (int block = 0; block < 400; ++block) {
    double hi = 2.0 * lo;
    double contrib = adaptive_block(integrand, lo, hi);
    acc += contrib;
    if (contrib < 1e-10 * acc) return acc;
    if (prev_block > 0.0) {
      double ratio = contrib / prev_block;
      if (ratio >= 1.0 - 1e-9) {
        if (++stale >= 60) return std::numeric_limits<double>::infinity();
      } else {
        stale = 0;
        // dyadic blocks of a regularly varying integrand decay geometrically:
        // once the ratio settles, sum the tail in closed form
        if (prev_ratio > 0.0 && std::abs(ratio - prev_ratio) <= 1e-8 * ratio) {
          if (++steady >= 3) return acc + contrib * ratio / (1.0 - ratio);
        } else {
          steady = 0;
        }
      }
      prev_ratio = ratio;
    }
    prev_block = contrib;
    lo = hi;
  }
  return std::numeric_limits<double>::infinity();
}

DoublingReport doubling_check(const ModulusOfContinuity& omega, int m, const GridSpec& grid) {
  DoublingReport rep;
  for (int i = 0; i < grid.step_points; ++i) {
    double t = grid.step(i);
    rep.kappa_hat = std::max(rep.kappa_hat, omega(2.0 * t) / omega(t));
  }
  rep.pass = rep.kappa_hat <= std::ldexp(1.0, m) + 1e-12;
  rep.ob_applicable = rep.kappa_hat < 2.0;
  if (rep.ob_applicable) {
    rep.ob_factor = rep.kappa_hat / (1.0 - std::log2(rep.kappa_hat));
    rep.ob_holds = true;
    int probes = std::min(grid.step_points, 48);
    for (int i = 0; i < probes; ++i) {
      double t = grid.step(i * (grid.step_points / probes));
      double star = omega_star(omega, 1, t);
      if (star > rep.ob_factor * omega(t) * (1.0 + 1e-9)) {
        rep.ob_holds = false;
        break;
      }
    }
  }
  return rep;
}

double circle_grid_seminorm(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m,
                            int log2_n, int steps) {
  const int n = 1 << log2_n;
  std::vector<cplx> vals = circle_values(f, log2_n);
  std::vector<double> coeff(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k)
    coeff[static_cast<size_t>(k)] = (((m - k) % 2) ? -1.0 : 1.0) * static_cast<double>(binomial(m, k));

  // log-spaced selection of grid rotations q in [1, n/2]
  std::vector<int> qs;
  double q_prev = 0.0;
  for (int i = 0; i < steps; ++i) {
    double r = static_cast<double>(i) / (steps - 1.0);
    double q = std::pow(static_cast<double>(n / 2), r);
    int qi = static_cast<int>(std::ceil(q));
    if (qi > static_cast<int>(q_prev)) qs.push_back(qi);
    q_prev = std::max(q_prev, static_cast<double>(qi));
  }

  double best = 0.0;
  for (int q : qs) {
    double dist = std::abs(1.0 - std::polar(1.0, 2.0 * std::numbers::pi * q / n));
    double g = omega(dist);
    if (!(g > 0.0)) continue;
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k <= m; ++k)
        acc += coeff[static_cast<size_t>(k)] * vals[static_cast<size_t>((j + k * q) % n)];
      best = std::max(best, std::abs(acc) / g);
    }
  }
  return best;
}

double vp_error_ratio(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m, int n,
                      const SmoothCutoff& cutoff) {
  return vp_error_ratio(f, omega, m, n, cutoff, circle_grid_seminorm(f, omega, m));
}

double vp_error_ratio(const PeriodicSignal& f, const ModulusOfContinuity& omega, int m, int n,
                      const SmoothCutoff& cutoff, double seminorm_value) {
  (void)m;
  if (seminorm_value == 0.0) return 0.0;
  PeriodicSignal diff(f.degree());
  double s = std::ldexp(1.0, -n);
  for (int k = -f.degree(); k <= f.degree(); ++k)
    diff.set_coeff(k, f.coeff(k) * (1.0 - cutoff.v(k * s)));
  int log2_n = 4;
  while ((1 << log2_n) < 4 * (f.degree() + 1)) ++log2_n;
  double num = 0.0;
  for (const cplx& z : circle_values(diff, log2_n)) num = std::max(num, std::abs(z));
  return num / (omega(s) * seminorm_value);
}

PeriodicSignal periodic_from_function(const std::function<double(double)>& f, int degree,
                                      int samples) {
  if (samples <= 0) samples = 4 * (degree + 1);
  // round up to a power of two for the FFT
  int n = 1;
  while (n < samples || n < 2 * degree + 2) n <<= 1;
  std::vector<cplx> vals(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) vals[static_cast<size_t>(j)] = f(2.0 * std::numbers::pi * j / n);
  fft(vals, false);
  PeriodicSignal out(degree);
  for (int k = -degree; k <= degree; ++k) {
    int idx = (k % n + n) % n;
    out.set_coeff(k, vals[static_cast<size_t>(idx)] / static_cast<double>(n));
  }
  return out;
}

}  // namespace ohz
