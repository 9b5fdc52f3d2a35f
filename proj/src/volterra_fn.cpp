#include "volterra/volterra_fn.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "volterra/special.hpp"

namespace volterra {

namespace {

// Gumbel weight e^{-s} e^{-e^{-s}}, zero once e^{-s} would underflow the
// outer exponential.
inline double gumbel_w(double s) {
  double t = std::exp(-s);
  if (t > 700.0) return 0.0;
  return std::exp(-s - t);
}

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kPi2 = kPi * kPi;

// Integration window for the Gumbel-weighted integrals: the weight is below
// 1e-300 outside s in (-6.6, 697); 1e-20 absolute needs s < 46.
constexpr double kSLo = -7.5;
constexpr double kSHi = 46.0;

}  // namespace

double nu(double x, const QuadConfig& cfg) {
  if (x < 0.0) throw std::domain_error("nu: requires x >= 0");
  if (x == 0.0) return 0.0;
  const double lx = std::log(x);
  auto f = [lx](double s) {
    double w = gumbel_w(s);
    if (w == 0.0) return 0.0;
    return w * (0.5 + std::atan((s + lx) / kPi) / kPi);
  };
  double i = integrate_or_throw(f, kSLo, kSHi, cfg);
  return std::expm1(x) + i;
}

double nu_prime(double x, const QuadConfig& cfg) {
  if (!(x > 0.0)) throw std::domain_error("nu_prime: requires x > 0");
  const double lx = std::log(x);
  auto f = [lx](double s) {
    double w = gumbel_w(s);
    if (w == 0.0) return 0.0;
    double v = s + lx;
    return w / (kPi2 + v * v);
  };
  double i = integrate_or_throw(f, kSLo, kSHi, cfg);
  return std::exp(x) + i / x;
}

double nu_double_prime(double x, const QuadConfig& cfg) {
  if (!(x > 0.0)) throw std::domain_error("nu_double_prime: requires x > 0");
  if (x < 1e-10) {
    // quadrature cancellation dominates below this point; differentiated
    // small-x expansion instead
    constexpr double g = kEulerGamma;
    constexpr double c3 = g * g - kPi2 / 6.0;
    double L = std::log(1.0 / x);
    return -1.0 / (x * x * L * L) *
           (1.0 + (2.0 * g - 2.0 + (3.0 * c3 - 6.0 * g) / L) / L);
  }
  const double lx = std::log(x);
  auto f = [lx](double s) {
    double w = gumbel_w(s);
    if (w == 0.0) return 0.0;
    double v = s + lx;
    double d = kPi2 + v * v;
    return w * (1.0 / d + 2.0 * v / (d * d));
  };
  double i = integrate_or_throw(f, kSLo, kSHi, cfg);
  return std::exp(x) - i / (x * x);
}

double big_n(double x, const QuadConfig& cfg) {
  if (x < 0.0) throw std::domain_error("big_n: requires x >= 0");
  if (x == 0.0) return 1.0;
  const double u_lo = std::max(12.0, std::log(std::max(x, 1.0)) + 45.0);
  double u_hi = std::log(746.0 / x) + 1.0;
  if (u_hi < -u_lo + 1.0) u_hi = -u_lo + 1.0;
  auto f = [x](double u) {
    double t = x * std::exp(u);
    if (t > 745.0) return 0.0;
    return std::exp(-t) / (kPi2 + u * u);
  };
  double i = integrate_or_throw(f, -u_lo, u_hi, cfg);
  // exact tail of 1/(pi^2+u^2) below -u_lo; the remaining correction is
  // bounded by x e^{-u_lo} / pi^2 <= e^{-45}/pi^2
  double tail = 0.5 - std::atan(u_lo / kPi) / kPi;
  return i + tail;
}

double nu_direct_oracle(double x, const QuadConfig& cfg) {
  if (x < 0.0) throw std::domain_error("nu_direct_oracle: requires x >= 0");
  if (x == 0.0) return 0.0;
  const double lx = std::log(x);
  auto g = [lx](double s) { return std::exp(s * lx - std::lgamma(s + 1.0)); };
  double peak = std::max(g(0.0), g(std::max(1.0, x)));
  double s_hi = 10.0;
  while (s_hi < 400.0 && g(s_hi) > 1e-18 * peak) s_hi += 10.0;
  return integrate_or_throw(g, 0.0, s_hi, cfg);
}

double nu_prime_minus_nu(double x, const QuadConfig& cfg) {
  if (!(x > 0.0)) throw std::domain_error("nu_prime_minus_nu: requires x > 0");
  const double lx = std::log(x);
  auto g = [lx](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp((s - 1.0) * lx - std::lgamma(s));
  };
  return integrate_or_throw(g, 0.0, 1.0, cfg);
}

double laplace_check_nu(double s, const QuadConfig& cfg) {
  if (!(s > 1.0)) throw std::domain_error("laplace_check_nu: requires s > 1");
  // int e^{-sx} nu(x) dx with nu = e^x - N split analytically:
  // int_0^inf e^{(1-s)x} dx = 1/(s-1) exactly.
  QuadConfig inner = cfg;
  inner.abs_tol = std::min(cfg.abs_tol, 1e-13);
  inner.rel_tol = std::min(cfg.rel_tol, 1e-13);
  auto f = [&](double x) {
    if (x <= 0.0) return 1.0;  // N(0) = 1
    return std::exp(-s * x) * big_n(x, inner);
  };
  double i = integrate_or_throw(f, 0.0, kInf, cfg);
  double lhs = 1.0 / (s - 1.0) - i;
  return lhs - 1.0 / (s * std::log(s));
}

namespace fast {

namespace {

// C2 natural cubic spline of log nu (and log nu') against log x. C2
// smoothness matters: tanh-sinh quadratures integrate through these lookups
// and stall on interpolation kinks of lower-order schemes.
struct NuTable {
  static constexpr double t_lo = -160.0;
  static constexpr double t_hi = 3.4012;  // log(30)
  static constexpr double h = 0.02;
  std::vector<double> log_nu, log_nu_m2;
  std::vector<double> log_nu_prime, log_nu_prime_m2;
  int n = 0;

  static void spline_m2(const std::vector<double>& y, double step, std::vector<double>& m2) {
    int n = static_cast<int>(y.size());
    m2.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    // natural boundary: m2[0] = m2[n-1] = 0; Thomas algorithm
    for (int i = 1; i < n - 1; ++i) {
      double rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (step * step);
      double m = 4.0 - c[i - 1];
      c[i] = 1.0 / m;
      d[i] = (rhs - d[i - 1]) / m;
    }
    for (int i = n - 2; i >= 1; --i) m2[i] = d[i] - c[i] * m2[i + 1];
  }

  void build() {
    n = static_cast<int>((t_hi - t_lo) / h) + 2;
    log_nu.resize(n);
    log_nu_prime.resize(n);
    QuadConfig cfg{1e-13, 1e-13, 2000};
    // the stored values subtract x so the spline only carries the bounded
    // part (log nu ~ x + O(e^{-x}) at the top of the range)
    for (int i = 0; i < n; ++i) {
      double x = std::exp(t_lo + i * h);
      log_nu[i] = std::log(volterra::nu(x, cfg)) - x;
      log_nu_prime[i] = std::log(volterra::nu_prime(x, cfg)) - x;
    }
    spline_m2(log_nu, h, log_nu_m2);
    spline_m2(log_nu_prime, h, log_nu_prime_m2);
  }

  double eval(const std::vector<double>& y, const std::vector<double>& m2, double t) const {
    double s = (t - t_lo) / h;
    int i = static_cast<int>(s);
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    double a = s - i, b = 1.0 - a;
    return b * y[i] + a * y[i + 1] +
           (h * h / 6.0) * ((b * b * b - b) * m2[i] + (a * a * a - a) * m2[i + 1]);
  }
};

const NuTable& table() {
  static NuTable tbl;
  static std::once_flag flag;
  std::call_once(flag, [] { tbl.build(); });
  return tbl;
}

// asymptotic expansion 1/L + g/L^2 + (g^2 - pi^2/6)/L^3 + c4/L^4, L = log(1/x)
double nu_asym_small(double x) {
  constexpr double g = kEulerGamma;
  constexpr double zeta3 = 1.202056903159594285399738161511;
  constexpr double c3 = g * g - kPi2 / 6.0;
  constexpr double c4 = g * g * g - g * kPi2 / 2.0 + 2.0 * zeta3;
  double L = -std::log(x);
  return (((c4 / L + c3) / L + g) / L + 1.0) / L;
}

}  // namespace

double nu(double x) {
  if (x < 0.0) throw std::domain_error("fast::nu: requires x >= 0");
  if (x == 0.0) return 0.0;
  double t = std::log(x);
  const NuTable& tbl = table();
  if (t < NuTable::t_lo) return nu_asym_small(x);
  if (t > NuTable::t_hi) return volterra::nu(x, QuadConfig{1e-13, 1e-13, 2000});
  return std::exp(tbl.eval(tbl.log_nu, tbl.log_nu_m2, t) + x);
}

double nu_prime(double x) {
  if (!(x > 0.0)) throw std::domain_error("fast::nu_prime: requires x > 0");
  double t = std::log(x);
  const NuTable& tbl = table();
  if (t < NuTable::t_lo) {
    // term-by-term derivative of the small-x expansion of nu
    constexpr double g = kEulerGamma;
    constexpr double zeta3 = 1.202056903159594285399738161511;
    constexpr double c3 = g * g - kPi2 / 6.0;
    constexpr double c4 = g * g * g - g * kPi2 / 2.0 + 2.0 * zeta3;
    double L = -t;
    return 1.0 / (x * L * L) * (1.0 + (2.0 * g + (3.0 * c3 + 4.0 * c4 / L) / L) / L);
  }
  if (t > NuTable::t_hi) return volterra::nu_prime(x, QuadConfig{1e-13, 1e-13, 2000});
  return std::exp(tbl.eval(tbl.log_nu_prime, tbl.log_nu_prime_m2, t) + x);
}

}  // namespace fast

}  // namespace volterra
