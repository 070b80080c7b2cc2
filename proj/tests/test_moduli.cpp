#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ohz/moduli.hpp"
#include "ohz/sampling.hpp"

using namespace ohz;

namespace {
GridSpec unit_grid() {
  GridSpec g;
  g.x_min = -1.0;
  g.x_max = 1.0;
  g.base_points = 1025;  // odd: includes x = 0 exactly
  g.step_points = 256;
  g.t_max = 2.0;
  return g;
}
}  // namespace

TEST_CASE("finite differences") {
  FunctionModel sq = FunctionModel::power(2);
  for (double t : {0.1, 0.7, -0.3}) {
    for (double x : {0.0, 1.5, -2.0}) {
      CHECK(finite_diff(sq, t, 2, x).real() == doctest::Approx(2.0 * t * t).epsilon(1e-12));
    }
  }
  FunctionModel c = FunctionModel::cosine();
  FunctionModel s = FunctionModel::sine();
  // Delta^3_t e^{ix} = (e^{it} - 1)^3 e^{ix}, split into real and imaginary parts
  double t = 0.37, x = 1.1;
  cplx expected = std::pow(std::polar(1.0, t) - 1.0, 3) * std::polar(1.0, x);
  cplx got = finite_diff(c, t, 3, x) + cplx(0, 1) * finite_diff(s, t, 3, x);
  CHECK(std::abs(got - expected) <= 1e-12);
  CHECK(finite_diff(c, 0.5, 0, 0.25) == c.value(0.25));
}

TEST_CASE("circle finite differences") {
  FunctionModel z = FunctionModel::analytic_poly({0.0, 1.0});
  cplx tau = std::polar(1.0, 0.7);
  cplx zeta = std::polar(1.0, -0.2);
  CHECK(std::abs(finite_diff_circle(z, tau, 1, zeta) - (tau * zeta - zeta)) <= 1e-14);
}

TEST_CASE("holder seminorm of |x|^1/2") {
  SeminormReport rep = holder_seminorm(FunctionModel::abs_power(0.5), 0.5, unit_grid());
  CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(rep.x_star) <= 1e-12);  // argmax at the kink
}

TEST_CASE("holder seminorm of the circle identity") {
  SeminormReport rep = holder_seminorm(FunctionModel::analytic_poly({0.0, 1.0}), 0.5);
  CHECK(rep.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.t_star == doctest::Approx(2.0).epsilon(1e-12));  // |1 - tau| at tau = -1
}

TEST_CASE("holder seminorm of constants and preconditions") {
  CHECK(holder_seminorm(FunctionModel::constant(3.0), 0.5, unit_grid()).value == 0.0);
  CHECK_THROWS_AS(holder_seminorm(FunctionModel::identity(), -1.0), DomainError);
  GridSpec empty;
  empty.step_points = 1;
  CHECK_THROWS_AS(holder_seminorm(FunctionModel::identity(), 0.5, empty), DomainError);
}

TEST_CASE("lambda_omega norms") {
  GridSpec g = unit_grid();
  // t_min = 1e-6 steps shed ~1e-8 to cancellation at the grid edges
  CHECK(lambda_omega_norm(FunctionModel::identity(), ModulusOfContinuity::power(1.0), 1, g).value ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(lambda_omega_norm(FunctionModel::polynomial({5.0, 3.0}), ModulusOfContinuity::power(1.0), 1,
                          g)
            .value == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(lambda_omega_norm(FunctionModel::abs_power(0.5), ModulusOfContinuity::power(0.5), 1, g)
            .value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("modulus of a function: sine closed form") {
  GridSpec g;
  g.base_points = 2048;
  g.step_points = 1024;
  FunctionModel s = FunctionModel::sine();
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    double expect = 2.0 * std::sin(x / 2.0);
    CHECK(modulus_of_function(s, 1, x, g) == doctest::Approx(expect).epsilon(5e-3));
  }
  CHECK(modulus_of_function(s, 1, 4.5, g) == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(modulus_of_function(FunctionModel::constant(2.0), 1, 1.0, g) == 0.0);
}

TEST_CASE("omega_star closed forms and divergence sentinel") {
  auto sqrtmod = ModulusOfContinuity::power(0.5);
  CHECK(omega_star(sqrtmod, 1, 0.25) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(omega_star(ModulusOfContinuity::constant(2.5), 1, 0.7) ==
        doctest::Approx(2.5).epsilon(1e-8));
  CHECK(omega_star(ModulusOfContinuity::power(1.0), 2, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::isinf(omega_star(ModulusOfContinuity::power(1.0), 1, 0.5)));
  // alpha < m closed form x^alpha / (m - alpha)
  for (int m : {1, 2, 3}) {
    for (double alpha : {0.25, 0.5, 0.9}) {
      double x = 0.37;
      double expect = std::pow(x, alpha) / (m - alpha);
      CHECK(omega_star(ModulusOfContinuity::power(alpha), m, x) ==
            doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("doubling check") {
  auto rep = doubling_check(ModulusOfContinuity::power(0.5), 1);
  CHECK(rep.kappa_hat == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.pass);
  CHECK(rep.ob_applicable);
  CHECK(rep.ob_factor == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rep.ob_holds);

  auto lin = doubling_check(ModulusOfContinuity::power(1.0), 1);
  CHECK(lin.kappa_hat == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lin.pass);
  CHECK_FALSE(lin.ob_applicable);

  auto quad = doubling_check(ModulusOfContinuity::power(2.0), 2);
  CHECK(quad.kappa_hat == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(quad.pass);
}

TEST_CASE("omega <= m omega_{*,m} and omega_* is a modulus") {
  GridSpec g;
  for (double alpha : {0.5, 0.8}) {
    auto om = ModulusOfContinuity::power(alpha);
    for (int i = 0; i < 16; ++i) {
      double x = g.step(i * 30 % g.step_points);
      double s1 = omega_star(om, 1, x);
      CHECK(om(x) <= s1 * (1.0 + 1e-10));
      double s2 = omega_star(om, 2, x);
      CHECK(om(x) <= 2.0 * s2 * (1.0 + 1e-10));
    }
  }
  // subadditivity and monotonicity of omega_* on a grid (omega = sqrt)
  auto om = ModulusOfContinuity::power(0.5);
  for (double x : {0.1, 0.5, 1.0}) {
    for (double y : {0.2, 0.8}) {
      double sxy = omega_star(om, 1, x + y);
      CHECK(sxy <= omega_star(om, 1, x) + omega_star(om, 1, y) + 1e-9);
      CHECK(omega_star(om, 1, x) <= sxy + 1e-9);
    }
  }
}

TEST_CASE("identity: second differences compose across step doubling") {
  FunctionModel s = FunctionModel::sine();
  FunctionModel p = FunctionModel::polynomial({0.3, -1.0, 0.0, 0.5, 0.1});
  for (const FunctionModel* f : {&s, &p}) {
    for (int m : {1, 2, 3}) {
      for (double h : {0.21, 0.05}) {
        for (double x : {-1.3, 0.4}) {
          cplx lhs = finite_diff(*f, 2.0 * h, m, x);
          cplx rhs = 0.0;
          for (int j = 0; j <= m; ++j)
            rhs += static_cast<double>(binomial(m, j)) * finite_diff(*f, h, m, x + j * h);
          CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("scaled-step bound omega(tx) <= 2^m t^m omega(x)") {
  for (double alpha : {0.5, 1.0, 1.7}) {
    auto om = ModulusOfContinuity::power(alpha);
    int m = om.order();
    auto rep = doubling_check(om, m);
    REQUIRE(rep.pass);
    for (double t : {1.3, 2.7, 9.0}) {
      for (double x : {0.05, 0.4, 2.0}) {
        CHECK(om(t * x) <= std::ldexp(1.0, m) * std::pow(t, m) * om(x) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("seminorm translation invariance and scaling") {
  // custom shifted copy of |x|^{1/2}: same seminorm on a shifted grid
  FunctionModel base = FunctionModel::abs_power(0.5);
  FunctionModel shifted = FunctionModel::custom(
      [](cplx x, int order) { return FunctionModel::abs_power(0.5).derivative(x - 0.25, order); },
      "abs_shift");
  GridSpec g = unit_grid();
  GridSpec gs = g;
  gs.x_min += 0.25;
  gs.x_max += 0.25;
  double v0 = holder_seminorm(base, 0.5, g).value;
  double v1 = holder_seminorm(shifted, 0.5, gs).value;
  CHECK(v1 == doctest::Approx(v0).epsilon(1e-10));

  // f(lambda x) scales the alpha-seminorm by lambda^alpha
  double lambda = 2.0;
  FunctionModel scaled = FunctionModel::custom(
      [lambda](cplx x, int order) {
        double fac = std::pow(lambda, order);
        return fac * FunctionModel::abs_power(0.5).derivative(lambda * x, order);
      },
      "abs_scaled");
  GridSpec gl = g;
  gl.x_min /= lambda;
  gl.x_max /= lambda;
  gl.t_min /= lambda;
  gl.t_max /= lambda;
  double v2 = holder_seminorm(scaled, 0.5, gl).value;
  CHECK(v2 == doctest::Approx(std::pow(lambda, 0.5) * v0).epsilon(1e-9));
}

TEST_CASE("modulus validation") {
  CHECK(ModulusOfContinuity::power(0.5).validate());
  CHECK(ModulusOfContinuity::constant(1.0).validate());
  auto bad = ModulusOfContinuity::tabulated([](double t) { return t * t; }, "t^2-as-order-1", 1);
  CHECK_FALSE(bad.validate());  // order-1 doubling fails for t^2
}

TEST_CASE("vp error ratio") {
  SmoothCutoff cutoff;
  // low-degree polynomial is reproduced exactly: ratio 0
  PeriodicSignal f(3);
  for (int k = -3; k <= 3; ++k) f.set_coeff(k, cplx(1.0, -0.5) / (1.0 + std::abs(k)));
  CHECK(vp_error_ratio(f, ModulusOfContinuity::power(1.0), 1, 3, cutoff) == 0.0);

  // |sin|^{1/2}-type roughness: bounded ratios across scales
  PeriodicSignal rough = periodic_from_function(
      [](double x) { return std::sqrt(std::abs(std::sin(x))); }, 1024);
  auto om = ModulusOfContinuity::power(0.5);
  double sn = circle_grid_seminorm(rough, om, 1);
  CHECK(sn > 0.5);
  double worst = 0.0;
  for (int n = 0; n <= 8; ++n) worst = std::max(worst, vp_error_ratio(rough, om, 1, n, cutoff, sn));
  CHECK(worst < 10.0);
  CHECK(worst > 0.0);
}

TEST_CASE("constant function has zero vp ratio by convention") {
  SmoothCutoff cutoff;
  PeriodicSignal c = PeriodicSignal::monomial(0, 2.5);
  CHECK(vp_error_ratio(c, ModulusOfContinuity::power(0.5), 1, 2, cutoff) == 0.0);
}

TEST_CASE("refined seminorms stabilize") {
  GridSpec coarse;
  coarse.base_points = 64;
  coarse.step_points = 32;
  coarse.x_min = -1.0;
  coarse.x_max = 1.0;
  FunctionModel root = FunctionModel::abs_power(0.5);
  auto sqrtmod = ModulusOfContinuity::power(0.5);
  double base = lambda_omega_norm(root, sqrtmod, 1, coarse).value;
  SeminormReport rep = lambda_omega_norm_refined(root, sqrtmod, 1, coarse);
  CHECK(rep.value >= base);         // refinement only improves a grid supremum
  CHECK(rep.value <= 1.0 + 1e-9);   // and never crosses the true value
  CHECK(rep.grid.base_points > coarse.base_points);

  // with the kink on the grid the first doubling already agrees
  GridSpec exact = coarse;
  exact.base_points = 65;
  SeminormReport done = lambda_omega_norm_refined(root, sqrtmod, 1, exact);
  CHECK(done.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(done.grid.base_points <= 4 * 65);
}

TEST_CASE("vanishing gauge at a grid step is an error") {
  auto zero_tail = ModulusOfContinuity::tabulated(
      [](double t) { return t > 1.0 ? 0.0 : t; }, "vanishing", 1);
  CHECK_THROWS_AS(lambda_omega_norm(FunctionModel::identity(), zero_tail, 1), DomainError);
}

TEST_CASE("grid modulus doubles along with the step") {
  GridSpec g;
  g.base_points = 1024;
  g.step_points = 512;
  FunctionModel s = FunctionModel::sine();
  for (int m : {1, 2}) {
    for (double x : {0.3, 0.9}) {
      double lo = modulus_of_function(s, m, x, g);
      double hi = modulus_of_function(s, m, 2.0 * x, g);
      CHECK(hi <= std::ldexp(1.0, m) * lo * (1.0 + 1e-9));
    }
  }
}
