#pragma once

namespace volterra {

/// Euler-Mascheroni constant, 30 significant digits.
constexpr double kEulerGamma = 0.577215664901532860606512090082;

/// Exponential integral E(x) = int_x^inf e^{-y}/y dy, x > 0.
double exp_int_E(double x);

/// Complementary exponential integral Etilde(x) = int_0^x (1-e^{-y})/y dy (entire).
double exp_int_tilde(double x);

/// Scaled exponential integral e^x E(x); stable for large x.
double exp_int_bold(double x);

/// Order-0 Bessel functions. Thin wrappers plus a scaled variant of I0 that
/// does not overflow.
double bessel_k0(double x);
double bessel_k0_scaled(double x);  // e^{x} K0(x)
double bessel_i0(double x);
double bessel_i0_scaled(double x);  // e^{-x} I0(x)
double bessel_j0(double x);
double bessel_y0(double x);

}  // namespace volterra
