#pragma once

#include <array>
#include <cmath>

#include "volterra/quadrature.hpp"

namespace volterra {

using Vec2 = std::array<double, 2>;

struct ModelParams {
  double T = 1.0;
  double lambda = 1.0;
  QuadConfig quad{1e-10, 1e-10, 2000};

  void validate() const {
    if (!(T > 0.0) || !(lambda > 0.0))
      throw std::invalid_argument("ModelParams: T and lambda must be positive");
    if (!std::isfinite(T * lambda))
      throw std::invalid_argument("ModelParams: T*lambda must be finite");
    quad.validate();
  }
};

/// Planar Gaussian density g_t(x) = e^{-|x|^2/2t} / (2 pi t), by radius.
double gaussian_g(double t, double r);

/// upsilon(alpha, beta) = int_0^1 e^{-alpha/s}/s * e^{-beta/(1-s)}/(1-s) ds
/// = 2 e^{-alpha-beta} K0(2 sqrt(alpha beta)).
double upsilon(double alpha, double beta, const QuadConfig& cfg = {});
double upsilon_quad(double alpha, double beta, const QuadConfig& cfg = {});

/// H_T^lambda at radius r: int_0^T e^{-r^2/2u}/u * nu((T-u) lambda) du.
/// Returns 0 for T <= 0 (paper convention) and +inf at r = 0.
double big_h(double T, double lambda, double r, const QuadConfig& cfg = {});

/// Radial derivative dH/dr (negative for r > 0).
double big_h_dr(double T, double lambda, double r, const QuadConfig& cfg = {});

/// Scale-free form N_{alpha,beta} = int_0^1 e^{-alpha/u}/u nu((1-u) beta) du,
/// with alpha = r^2/(2T), beta = T lambda; big_h(T,lambda,r) == mass_n(alpha,beta).
double mass_n(double alpha, double beta, const QuadConfig& cfg = {});
/// M_{alpha,beta} = int_0^1 e^{-alpha/u}/u^2 nu((1-u) beta) du, so that
/// dH/dr = -(r/T) M.
double mass_m(double alpha, double beta, const QuadConfig& cfg = {});

/// Radial form of the off-Gaussian kernel: h_t^lambda(x,y) = little_h_radial(t,lambda,|x|,|y|).
double little_h_radial(double t, double lambda, double a, double b, const QuadConfig& cfg = {});
double little_h(double t, double lambda, const Vec2& x, const Vec2& y, const QuadConfig& cfg = {});

/// Transition density of a 2d Bessel process (radius of planar BM):
/// q_t(a,b) = e^{-(a^2+b^2)/2t} I0(ab/t) b/t, a density in b on [0,inf).
double bessel2_q(double t, double a, double b);

/// Radial kernel fbar_t(a,b) = q_t(a,b) + 2 pi b hbar_t(a,b); integrates in b
/// to 1 + H_t(a).
double full_f_radial(double t, double lambda, double a, double b, const QuadConfig& cfg = {});
/// Planar kernel f_t(x,y) = g_t(x-y) + h_t(x,y).
double full_f(double t, double lambda, const Vec2& x, const Vec2& y, const QuadConfig& cfg = {});

/// Transition density d_{s,t}^{T,lambda}. The radial form is a probability
/// density in b on [0,inf); the planar form in y on R^2. Supports the
/// extension rules to t > T (plain heat flow after time T).
double trans_density_d_radial(const ModelParams& P, double s, double t, double a, double b);
double trans_density_d(const ModelParams& P, double s, double t, const Vec2& x, const Vec2& y);

/// Drift bbar_t^lambda(r) >= 0; the planar drift is -x/|x| * bbar(|x|).
double drift_bbar(double t, double lambda, double r, const QuadConfig& cfg = {});
Vec2 drift_b(double t, double lambda, const Vec2& x, const QuadConfig& cfg = {});

/// R_T^{lambda,lambda'}(r) = (1 + H^{lambda'})/(1 + H^lambda), with the r = 0
/// limit nu(T lambda')/nu(T lambda).
double ratio_R(double T, double lambda, double lambda_prime, double r, const QuadConfig& cfg = {});

/// phi_T^{lambda,lambda'}(a) = nu((T-a) lambda')/nu((T-a) lambda), phi(T) = 1.
double phi(double T, double lambda, double lambda_prime, double a, const QuadConfig& cfg = {});

/// Bound-state radial eigenfunction psibar(a) = 2 sqrt(lambda) K0(sqrt(2 lambda) a):
/// int_0^inf fbar_t(a,b) psibar(b) db = e^{t lambda} psibar(a).
double eigen_psibar(double lambda, double a);
/// Continuum radial eigenfunction psibar_r(a); eigenvalue e^{-t r^2/2}.
double eigen_psibar_r(double lambda, double r, double a);

}  // namespace volterra
