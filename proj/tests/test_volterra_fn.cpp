#include <cmath>

#include "doctest.h"
#include "volterra/special.hpp"
#include "volterra/volterra_fn.hpp"

using namespace volterra;

namespace {
const QuadConfig cfg{1e-13, 1e-13, 4000};
}

TEST_CASE("nu at zero and small-x asymptotics") {
  CHECK(nu(0.0, cfg) == 0.0);
  double x = 1e-6;
  double L = std::log(1.0 / x);
  CHECK(nu(x, cfg) == doctest::Approx(1.0 / L).epsilon(0.12));  // leading order only
  // three-term remainder bounded by C/L^4 with a moderate C
  constexpr double g = kEulerGamma;
  for (double xx : {1e-4, 1e-6, 1e-8, 1e-10}) {
    double l = std::log(1.0 / xx);
    double three = 1.0 / l + g / (l * l) + (g * g - M_PI * M_PI / 6.0) / (l * l * l);
    CHECK(std::abs(nu(xx, cfg) - three) < 2.0 / (l * l * l * l));
  }
}

TEST_CASE("nu dual-method agreement") {
  for (double x : {0.3, 1.0, 4.0}) {
    double a = nu(x, cfg);
    double b = nu_direct_oracle(x, cfg);
    CHECK(std::abs(a - b) / a < 1e-10);
  }
}

TEST_CASE("ramanujan identity on a grid") {
  for (int i = 0; i < 40; ++i) {
    double x = 1e-3 * std::pow(2e4, i / 39.0);
    double res = std::abs(nu(x, cfg) + big_n(x, cfg) - std::exp(x));
    CHECK(res <= 1e-9 * std::exp(x));
  }
}

TEST_CASE("N is a Laplace transform of a probability density") {
  CHECK(big_n(0.0, cfg) == 1.0);
  double prev = 1.0 + 1e-15;
  for (double x : {1e-3, 1e-2, 0.1, 1.0, 5.0, 20.0}) {
    double n = big_n(x, cfg);
    CHECK(n > 0.0);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("nu_prime identity and asymptotics") {
  for (double x : {0.3, 1.0, 3.0}) {
    double lhs = nu_prime(x, cfg) - nu(x, cfg);
    CHECK(lhs == doctest::Approx(nu_prime_minus_nu(x, cfg)).epsilon(1e-9));
  }
  double x = 1e-8;
  double L = std::log(1.0 / x);
  CHECK(nu_prime(x, cfg) == doctest::Approx(1.0 / (x * L * L)).epsilon(0.2));
}

TEST_CASE("nu_double_prime vs centered finite difference") {
  double h = 1e-4;
  double fd = (nu_prime(10.0 + h, cfg) - nu_prime(10.0 - h, cfg)) / (2.0 * h);
  CHECK(nu_double_prime(10.0, cfg) == doctest::Approx(fd).epsilon(1e-5));
  // small-x branch joins the quadrature branch continuously
  double lo = nu_double_prime(0.99e-10, cfg), hi = nu_double_prime(1.01e-10, cfg);
  CHECK(lo == doctest::Approx(hi).epsilon(0.05));
}

TEST_CASE("x nu'(x)/nu(x) increases") {
  double prev = 0.0;
  for (double x : {1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    double v = x * nu_prime(x, cfg) / nu(x, cfg);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("laplace transform residuals") {
  CHECK(std::abs(laplace_check_nu(2.0, cfg)) <= 1e-6);
  CHECK(std::abs(laplace_check_nu(1.1, cfg)) <= 1e-5);
  CHECK(std::abs(laplace_check_nu(10.0, cfg)) <= 1e-8);
}

TEST_CASE("exponential integral family") {
  for (double x : {0.1, 1.0, 5.0, 30.0}) {
    CHECK(std::abs(exp_int_E(x) + std::log(x) + kEulerGamma - exp_int_tilde(x)) <= 1e-12);
  }
  CHECK(50.0 * std::exp(50.0) * exp_int_E(50.0) == doctest::Approx(1.0).epsilon(0.02));
  double q = integrate_or_throw([](double y) { return std::exp(-y) / y; }, 1.0, kInf, cfg);
  CHECK(std::abs(exp_int_E(1.0) - q) <= 1e-10);
  // scaled form consistent across its branch switch
  CHECK(exp_int_bold(39.9) == doctest::Approx(exp_int_bold(40.1)).epsilon(0.02));
  CHECK(exp_int_bold(100.0) == doctest::Approx(1.0 / 100.0).epsilon(0.02));
}

TEST_CASE("fast tables match quadrature") {
  for (double x : {1e-60, 1e-20, 1e-6, 0.03, 0.37, 1.0, 2.5, 12.0}) {
    CHECK(fast::nu(x) == doctest::Approx(nu(x, cfg)).epsilon(2e-9));
    CHECK(fast::nu_prime(x) == doctest::Approx(nu_prime(x, cfg)).epsilon(2e-9));
  }
}
