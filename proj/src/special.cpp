#include "volterra/special.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

double exp_int_E(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_int_E: requires x > 0");
  if (x < 1e-16) return -std::log(x) - kEulerGamma;  // remainder O(x)
  if (x > 700.0) return 0.0;  // below double underflow once e^{-x} factors in
  return -std::expint(-x);
}

double exp_int_tilde(double x) {
  if (x < 0.0) throw std::domain_error("exp_int_tilde: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 1.5) {
    // sum (-1)^{n+1} x^n / (n n!)
    double term = x, sum = x;
    for (int n = 2; n < 64; ++n) {
      term *= -x / n;
      double add = term / n;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return exp_int_E(x) + std::log(x) + kEulerGamma;
}

double exp_int_bold(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_int_bold: requires x > 0");
  if (x < 40.0) return std::exp(x) * exp_int_E(x);
  // modified Lentz continued fraction for e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 200; ++k) {
    double ak = -static_cast<double>(k) * k;
    b += 2.0;
    d = 1.0 / (ak * d + b);
    c = b + ak / c;
    double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

namespace {
// libstdc++ raises on sub-1e-300 arguments, and the ascending series is
// exact to double precision below 1e-8 anyway
constexpr double kBesselSmall = 1e-8;
constexpr double kLog2 = 0.69314718055994530941723212146;
}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
  if (x < kBesselSmall) return -std::log(x) + kLog2 - kEulerGamma;
  return std::cyl_bessel_k(0.0, x);
}

double bessel_k0_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0_scaled: requires x > 0");
  if (x < kBesselSmall) return -std::log(x) + kLog2 - kEulerGamma;
  if (x <= 600.0) return std::exp(x) * std::cyl_bessel_k(0.0, x);
  // K0(x) ~ sqrt(pi/2x) e^{-x} (1 - 1/8x + 9/128x^2 - ...)
  double sum = 1.0, term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (8.0 * k * x);
    sum += term;
  }
  return std::sqrt(M_PI / (2.0 * x)) * sum;
}
double bessel_i0(double x) {
  if (x < 0.0) x = -x;
  if (x < kBesselSmall) return 1.0 + 0.25 * x * x;
  return std::cyl_bessel_i(0.0, x);
}
double bessel_j0(double x) {
  if (x < 0.0) x = -x;
  if (x < kBesselSmall) return 1.0 - 0.25 * x * x;
  return std::cyl_bessel_j(0.0, x);
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: requires x > 0");
  if (x < kBesselSmall) return 2.0 / M_PI * (std::log(0.5 * x) + kEulerGamma);
  return std::cyl_neumann(0.0, x);
}

double bessel_i0_scaled(double x) {
  if (x < 0.0) x = -x;
  if (x < kBesselSmall) return (1.0 + 0.25 * x * x) * std::exp(-x);
  if (x <= 600.0) return std::exp(-x) * std::cyl_bessel_i(0.0, x);
  // asymptotic series: I0(x) ~ e^x/sqrt(2 pi x) * sum ((2k-1)!!)^2 / (k! (8x)^k)
  double sum = 1.0, term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace volterra
