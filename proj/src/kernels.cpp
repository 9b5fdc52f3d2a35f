#include "volterra/kernels.hpp"

#include <cmath>

#include "volterra/special.hpp"
#include "volterra/volterra_fn.hpp"

namespace volterra {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676656;
constexpr double kInfty = std::numeric_limits<double>::infinity();

// integrands below treat exponents < -745 as exact zeros
inline double safe_exp(double e) { return e < -745.0 ? 0.0 : std::exp(e); }
}  // namespace

double gaussian_g(double t, double r) {
  if (!(t > 0.0)) throw std::domain_error("gaussian_g: requires t > 0");
  return safe_exp(-r * r / (2.0 * t)) / (kTwoPi * t);
}

double upsilon(double alpha, double beta, const QuadConfig& cfg) {
  (void)cfg;
  if (alpha < 0.0 || beta < 0.0) throw std::domain_error("upsilon: requires alpha, beta >= 0");
  if (alpha == 0.0 || beta == 0.0) return kInfty;  // log-divergent endpoint
  // closed form: substituting s = 1/(1+e^{-v}) turns the integral into
  // e^{-a-b} int exp(-2 sqrt(ab) cosh(v)) dv = 2 e^{-a-b} K0(2 sqrt(ab))
  double sa = std::sqrt(alpha), sb = std::sqrt(beta);
  double e = sa + sb;
  if (e * e > 740.0) return 0.0;
  // keep the K0 argument representable; below this the value is already in
  // the log regime and the clamp error is ~1e-3 relative on a 1e-300 tail
  double z = std::max(2.0 * sa * sb, 1e-300);
  return 2.0 * safe_exp(-e * e) * bessel_k0_scaled(z);
}

/// Quadrature route for upsilon, kept as a test oracle for the closed form.
double upsilon_quad(double alpha, double beta, const QuadConfig& cfg) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::domain_error("upsilon_quad: requires alpha, beta > 0");
  auto f = [alpha, beta](double s) {
    double om = 1.0 - s;
    return safe_exp(-alpha / s - beta / om) / (s * om);
  };
  return integrate_de_or_throw(f, 0.0, 1.0, cfg);
}

namespace {
// D(beta) = int_0^1 (nu((1-u) beta) - nu(beta))/u du; the alpha-independent
// part of the small-alpha expansion N = nu(beta) E(alpha) + D(beta) + O(alpha)
double mass_n_offset(double beta, const QuadConfig& cfg) {
  auto f = [beta](double u) { return (fast::nu((1.0 - u) * beta) - fast::nu(beta)) / u; };
  return integrate_de_or_throw(f, 0.0, 1.0, cfg);
}
}  // namespace

double mass_n(double alpha, double beta, const QuadConfig& cfg) {
  if (!(beta > 0.0)) throw std::domain_error("mass_n: requires beta > 0");
  if (alpha == 0.0) return kInfty;
  if (alpha > 740.0) return 0.0;
  if (alpha < 1e-8) {
    // the e^{-alpha/u} knee sits below quadrature resolution; expansion
    // around alpha = 0 instead
    return fast::nu(beta) * exp_int_E(alpha) + mass_n_offset(beta, cfg);
  }
  auto f = [alpha, beta](double u) {
    double e = safe_exp(-alpha / u);
    if (e == 0.0) return 0.0;
    return e / u * fast::nu((1.0 - u) * beta);
  };
  return integrate_de_or_throw(f, 0.0, 1.0, cfg);
}

double mass_m(double alpha, double beta, const QuadConfig& cfg) {
  if (!(beta > 0.0)) throw std::domain_error("mass_m: requires beta > 0");
  if (alpha == 0.0) return kInfty;
  if (alpha > 740.0) return 0.0;
  if (alpha < 1e-8) {
    return fast::nu(beta) * std::exp(-alpha) / alpha -
           beta * fast::nu_prime(beta) * exp_int_E(alpha);
  }
  auto f = [alpha, beta](double u) {
    double e = safe_exp(-alpha / u);
    if (e == 0.0) return 0.0;
    return e / (u * u) * fast::nu((1.0 - u) * beta);
  };
  return integrate_de_or_throw(f, 0.0, 1.0, cfg);
}

double big_h(double T, double lambda, double r, const QuadConfig& cfg) {
  if (!(lambda > 0.0)) throw std::domain_error("big_h: requires lambda > 0");
  if (T <= 0.0) return 0.0;
  if (r == 0.0) return kInfty;
  // keep alpha representable when r^2 underflows; contributions from radii
  // below 1e-145 are ~r log r and irrelevant to any integral
  double alpha = std::max(r * r / (2.0 * T), 1e-290);
  if (alpha > 740.0) return 0.0;
  return mass_n(alpha, T * lambda, cfg);
}

double big_h_dr(double T, double lambda, double r, const QuadConfig& cfg) {
  if (!(lambda > 0.0)) throw std::domain_error("big_h_dr: requires lambda > 0");
  if (T <= 0.0) return 0.0;
  if (!(r > 0.0)) throw std::domain_error("big_h_dr: requires r > 0");
  double alpha = std::max(r * r / (2.0 * T), 1e-290);
  if (alpha > 740.0) return 0.0;
  return -(r / T) * mass_m(alpha, T * lambda, cfg);
}

double little_h_radial(double t, double lambda, double a, double b, const QuadConfig& cfg) {
  if (!(t > 0.0) || !(lambda > 0.0))
    throw std::domain_error("little_h_radial: requires t, lambda > 0");
  if (a == 0.0 || b == 0.0) return kInfty;
  const double alpha0 = std::max(a * a / (2.0 * t), 1e-290);
  const double beta0 = std::max(b * b / (2.0 * t), 1e-290);
  if (alpha0 + beta0 > 740.0) return 0.0;

  // upsilon with a near-zero argument is itself large-log singular; cap how
  // hard we push it
  QuadConfig inner = cfg;
  inner.abs_tol = std::max(cfg.abs_tol * 0.01, 1e-14);
  inner.rel_tol = std::max(cfg.rel_tol * 0.1, 3e-10);
  // the extrapolated tail of the critical nu' singularity floors the
  // achievable relative accuracy around 1e-9
  QuadConfig outer = cfg;
  outer.rel_tol = std::max(cfg.rel_tol, 5e-9);
  outer.abs_tol = std::max(cfg.abs_tol, 1e-13);

  const double tl = t * lambda;
  auto f = [&](double r) {
    double om = 1.0 - r;
    if (om <= 0.0) return 0.0;
    double u = upsilon(alpha0 / om, beta0 / om, inner);
    if (u == 0.0) return 0.0;
    return u * fast::nu_prime(tl * r) / om;
  };
  // nu'(t lambda r) ~ 1/(r log^2 r) at r = 0 (critical-log tail, needs the
  // substitution); towards r = 1 the upsilon factor decays double-exponentially
  double body = integrate_singular_or_throw(f, 0.0, 0.5, Singular::lower, outer) +
                integrate_de_or_throw(f, 0.5, 1.0, outer);
  return lambda / kTwoPi * body;
}

double little_h(double t, double lambda, const Vec2& x, const Vec2& y, const QuadConfig& cfg) {
  return little_h_radial(t, lambda, std::hypot(x[0], x[1]), std::hypot(y[0], y[1]), cfg);
}

double bessel2_q(double t, double a, double b) {
  if (!(t > 0.0)) throw std::domain_error("bessel2_q: requires t > 0");
  if (b < 0.0 || a < 0.0) throw std::domain_error("bessel2_q: requires a, b >= 0");
  double d = a - b;
  return b / t * safe_exp(-d * d / (2.0 * t)) * bessel_i0_scaled(a * b / t);
}

double full_f_radial(double t, double lambda, double a, double b, const QuadConfig& cfg) {
  if (a == 0.0) return kInfty;
  if (b == 0.0) return 0.0;
  return bessel2_q(t, a, b) + kTwoPi * b * little_h_radial(t, lambda, a, b, cfg);
}

double full_f(double t, double lambda, const Vec2& x, const Vec2& y, const QuadConfig& cfg) {
  double dx = x[0] - y[0], dy = x[1] - y[1];
  return gaussian_g(t, std::hypot(dx, dy)) + little_h(t, lambda, x, y, cfg);
}

namespace {

// (Defd2) limit density from the origin, radial in b:
// (1 + Hbar_{T-t}(b)) * lambda int_0^{t-s} (b/(dt-r)) e^{-b^2/(2(dt-r))} nu'(r lambda) dr
//                      / nu((T-s) lambda)
double d_from_origin_radial(const ModelParams& P, double s, double t, double b) {
  if (b == 0.0) return 0.0;
  const double dt = t - s;
  const double lam = P.lambda;
  auto f = [&](double r) {
    double u = dt - r;
    if (u <= 0.0) return 0.0;
    return b / u * safe_exp(-b * b / (2.0 * u)) * fast::nu_prime(lam * r);
  };
  // critical nu' tail at r = 0; Gaussian factor kills the r = dt endpoint
  QuadConfig outer = P.quad;
  outer.rel_tol = std::max(outer.rel_tol, 5e-9);
  outer.abs_tol = std::max(outer.abs_tol, 1e-13);
  double body = integrate_singular_or_throw(f, 0.0, 0.5 * dt, Singular::lower, outer) +
                integrate_de_or_throw(f, 0.5 * dt, dt, outer);
  double hb = (t < P.T) ? big_h(P.T - t, lam, b, P.quad) : 0.0;
  return (1.0 + hb) * lam * body / fast::nu((P.T - s) * lam);
}

}  // namespace

double trans_density_d_radial(const ModelParams& P, double s, double t, double a, double b) {
  P.validate();
  if (!(0.0 <= s && s < t)) throw std::invalid_argument("trans_density_d: requires 0 <= s < t");
  if (a < 0.0 || b < 0.0) throw std::domain_error("trans_density_d: radii must be >= 0");
  const double T = P.T;
  if (s >= T) return bessel2_q(t - s, a, b);
  if (t > T) {
    // d_{s,T} convolved with the plain heat flow over (T, t]
    auto f = [&](double c) {
      return trans_density_d_radial(P, s, T, a, c) * bessel2_q(t - T, c, b);
    };
    double c_hi = std::max(a, b) + 12.0 * std::sqrt(t - s) + 1.0;
    return integrate_or_throw(f, 0.0, c_hi, P.quad);
  }
  if (a == 0.0) return d_from_origin_radial(P, s, t, b);
  if (b == 0.0) return 0.0;
  double num = 1.0 + big_h(T - t, P.lambda, b, P.quad);
  double den = 1.0 + big_h(T - s, P.lambda, a, P.quad);
  return full_f_radial(t - s, P.lambda, a, b, P.quad) * num / den;
}

double trans_density_d(const ModelParams& P, double s, double t, const Vec2& x, const Vec2& y) {
  P.validate();
  if (!(0.0 <= s && s < t)) throw std::invalid_argument("trans_density_d: requires 0 <= s < t");
  const double T = P.T;
  double ra = std::hypot(x[0], x[1]);
  double rb = std::hypot(y[0], y[1]);
  double dx = x[0] - y[0], dy = x[1] - y[1];
  if (s >= T) return gaussian_g(t - s, std::hypot(dx, dy));
  if (t > T) {
    // reduce to the radial form of the same convolution around x
    throw std::invalid_argument("trans_density_d: planar form not provided for s < T < t; use radial");
  }
  if (ra == 0.0) {
    double radial = d_from_origin_radial(P, s, t, rb);
    return rb > 0.0 ? radial / (kTwoPi * rb)
                    : (1.0 + big_h(T - t, P.lambda, 0.0, P.quad)) * 0.0;  // density at the origin point
  }
  double num = 1.0 + big_h(T - t, P.lambda, rb, P.quad);
  double den = 1.0 + big_h(T - s, P.lambda, ra, P.quad);
  return full_f(t - s, P.lambda, x, y, P.quad) * num / den;
}

double drift_bbar(double t, double lambda, double r, const QuadConfig& cfg) {
  if (!(lambda > 0.0)) throw std::domain_error("drift_bbar: requires lambda > 0");
  if (t <= 0.0 || r == 0.0) return 0.0;
  double alpha = r * r / (2.0 * t);
  if (alpha > 700.0) return 0.0;
  double beta = t * lambda;
  double m = mass_m(alpha, beta, cfg);
  double n = mass_n(alpha, beta, cfg);
  return r / t * m / (1.0 + n);
}

Vec2 drift_b(double t, double lambda, const Vec2& x, const QuadConfig& cfg) {
  double r = std::hypot(x[0], x[1]);
  if (r == 0.0) return {0.0, 0.0};
  double bb = drift_bbar(t, lambda, r, cfg);
  return {-x[0] / r * bb, -x[1] / r * bb};
}

double ratio_R(double T, double lambda, double lambda_prime, double r, const QuadConfig& cfg) {
  if (!(T > 0.0) || !(lambda > 0.0) || !(lambda_prime > 0.0))
    throw std::domain_error("ratio_R: requires positive parameters");
  if (r == 0.0) return fast::nu(T * lambda_prime) / fast::nu(T * lambda);
  return (1.0 + big_h(T, lambda_prime, r, cfg)) / (1.0 + big_h(T, lambda, r, cfg));
}

double phi(double T, double lambda, double lambda_prime, double a, const QuadConfig& cfg) {
  (void)cfg;
  if (!(T > 0.0) || !(lambda > 0.0) || !(lambda_prime > 0.0))
    throw std::domain_error("phi: requires positive parameters");
  if (a < 0.0 || a > T) throw std::domain_error("phi: requires a in [0, T]");
  if (a == T) return 1.0;
  return fast::nu((T - a) * lambda_prime) / fast::nu((T - a) * lambda);
}

double eigen_psibar(double lambda, double a) {
  if (!(lambda > 0.0) || !(a > 0.0)) throw std::domain_error("eigen_psibar: requires lambda, a > 0");
  return 2.0 * std::sqrt(lambda) * bessel_k0(std::sqrt(2.0 * lambda) * a);
}

double eigen_psibar_r(double lambda, double r, double a) {
  if (!(lambda > 0.0) || !(r > 0.0) || !(a > 0.0))
    throw std::domain_error("eigen_psibar_r: requires positive arguments");
  double l = std::log(r * r / (2.0 * lambda));
  double norm = std::sqrt(l * l + M_PI * M_PI);
  return (l * bessel_j0(r * a) - M_PI * bessel_y0(r * a)) / norm;
}

}  // namespace volterra
