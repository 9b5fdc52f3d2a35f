#pragma once

#include "volterra/quadrature.hpp"

namespace volterra {

/// The Volterra function nu(x) = int_0^inf x^s / Gamma(s+1) ds and relatives.
///
/// Evaluation goes through Ramanujan's identity nu = e^x - N after the
/// substitution a = e^u and one integration by parts, which turns the
/// integral into a Gumbel-weighted average with double-exponential decay on
/// both tails:
///   nu(x) = (e^x - 1) + int e^{-s} e^{-e^{-s}} (1/2 + atan((s+log x)/pi)/pi) ds.

double nu(double x, const QuadConfig& cfg = {});
double nu_prime(double x, const QuadConfig& cfg = {});
double nu_double_prime(double x, const QuadConfig& cfg = {});

/// Ramanujan's integral N(x) = int_0^inf e^{-ax} / (a (pi^2 + log^2 a)) da,
/// computed from the raw u = log a form with an exact arctangent tail, so it
/// is an independent route from nu() for the identity nu + N = e^x.
double big_n(double x, const QuadConfig& cfg = {});

/// Direct s-quadrature of the defining integral; oracle only (slow).
double nu_direct_oracle(double x, const QuadConfig& cfg = {});

/// int_0^1 x^{s-1}/Gamma(s) ds = nu'(x) - nu(x); used by identity checks.
double nu_prime_minus_nu(double x, const QuadConfig& cfg = {});

/// Residual of the Laplace transform identity:
/// int_0^inf e^{-sx} nu(x) dx - 1/(s log s), for s > 1.
double laplace_check_nu(double s, const QuadConfig& cfg = {});

namespace fast {
/// Table-backed nu and nu' lookups (cubic interpolation on a log-x grid,
/// relative accuracy ~1e-10). Built lazily, thread-safe, deterministic.
/// Used on Monte-Carlo hot paths only; identity checks use the quadrature
/// route above.
double nu(double x);
double nu_prime(double x);
}  // namespace fast

}  // namespace volterra
