#include "volterra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <vector>

namespace volterra {

namespace {

// QUADPACK DQK15 nodes and weights (positive half, node 7 is the midpoint).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

double eval_checked(const Integrand& f, double x) {
  double y = f(x);
  if (!std::isfinite(y))
    throw NonFiniteError("integrand returned a non-finite value at x = " + std::to_string(x));
  return y;
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = eval_checked(f, c);
  for (int i = 0; i < 7; ++i) {
    fv[i] = eval_checked(f, c - h * kXgk[i]);
    fv[14 - i] = eval_checked(f, c + h * kXgk[i]);
  }
  double kron = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kron += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  kron *= h;
  gauss *= h;
  // QUADPACK-style error rescaling
  double resasc = 0.0;
  double mean = kron / (b - a);
  for (int i = 0; i < 15; ++i) {
    double w = (i == 7) ? kWgk[7] : kWgk[i < 7 ? i : 14 - i];
    resasc += w * std::abs(fv[i] - mean);
  }
  resasc *= std::abs(h);
  double err = std::abs(kron - gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, kron, err};
}

QuadResult adaptive_gk(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  QuadResult res;
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  res.evaluations = 15;
  heap.push(s0);
  double total = s0.value, toterr = s0.error;
  int splits = 0;
  while (toterr > cfg.tolerance_for(total) && splits < cfg.max_subdivisions) {
    Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
      heap.push({worst.a, worst.b, worst.value, 0.0});
      toterr -= worst.error;
      continue;
    }
    Segment l = gk15(f, worst.a, mid);
    Segment r = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += l.value + r.value - worst.value;
    toterr += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++splits;
  }
  res.value = total;
  res.error_estimate = toterr;
  res.converged = toterr <= cfg.tolerance_for(total);
  return res;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
  if (std::isinf(b)) {
    // x = a + t/(1-t), dx = dt/(1-t)^2; GK nodes are interior so t=1 is never hit
    auto g = [&](double t) {
      double om = 1.0 - t;
      double x = a + t / om;
      double fx = f(x);
      if (!std::isfinite(fx)) {
        // exponentially decaying tails may underflow through inf*0; treat a
        // non-finite value far out as an error like anywhere else
        throw NonFiniteError("integrand non-finite at x = " + std::to_string(x));
      }
      return fx / (om * om);
    };
    return adaptive_gk(g, 0.0, 1.0, cfg);
  }
  return adaptive_gk(f, a, b, cfg);
}

namespace {

// One tanh-sinh level-sum over nodes with spacing h, skipping already-used
// nodes when refining (stride 2 reuse is handled by the caller summing
// odd-index contributions).
struct TsNode {
  double dist;  // distance from the nearer endpoint, in [0,1] half-width units
  double weight;
  int side;  // -1 lower, +1 upper, 0 center
};

void ts_nodes(double h, bool odd_only, std::vector<TsNode>& out) {
  out.clear();
  const double pi2 = 1.5707963267948966;
  for (int k = odd_only ? 1 : 0;; k += odd_only ? 2 : 1) {
    double kh = k * h;
    double y = pi2 * std::sinh(kh);
    if (y > 48.0) break;  // node distance ~ e^{-2y}; beyond this everything underflows
    double ch = std::cosh(y);
    double w = pi2 * std::cosh(kh) / (ch * ch);
    // 1 - tanh(y) = 2 e^{-2y} / (1 + e^{-2y}), computed stably
    double e2 = std::exp(-2.0 * y);
    double dist = 2.0 * e2 / (1.0 + e2);
    if (k == 0) {
      out.push_back({1.0, w, 0});
    } else {
      out.push_back({dist, w, -1});
      out.push_back({dist, w, +1});
    }
    if (k == 0 && odd_only) break;
  }
}

}  // namespace

QuadResult integrate_log_singular(const Integrand& f, double a, double b,
                                  Singular which, const QuadConfig& cfg) {
  cfg.validate();
  if (std::isinf(b)) {
    if (which != Singular::lower)
      throw std::invalid_argument("integrate_log_singular: infinite b requires lower singularity");
    QuadResult head = integrate_log_singular(f, a, a + 1.0, Singular::lower, cfg);
    QuadResult tail = integrate(f, a + 1.0, kInf, cfg);
    head.value += tail.value;
    head.error_estimate += tail.error_estimate;
    head.evaluations += tail.evaluations;
    head.converged = head.converged && tail.converged;
    return head;
  }
  if (!(a < b)) throw std::invalid_argument("integrate_log_singular: requires a < b");

  if (which == Singular::both) {
    double m = 0.5 * (a + b);
    QuadResult lo = integrate_log_singular(f, a, m, Singular::lower, cfg);
    QuadResult hi = integrate_log_singular(f, m, b, Singular::upper, cfg);
    lo.value += hi.value;
    lo.error_estimate += hi.error_estimate;
    lo.evaluations += hi.evaluations;
    lo.converged = lo.converged && hi.converged;
    return lo;
  }

  // Substitute x = (singular endpoint) +/- w e^{1-1/t}, which maps x^{d-1}
  // and any power of log(1/x) endpoint behavior to a smooth integrand on
  // (0,1]: benign singularities vanish double-exponentially at t = 0, and the
  // critical 1/(x log^2(e/x)) family tends to a finite limit. Below t_cut the
  // x-offset would underflow, so that piece is covered by downward quadratic
  // extrapolation of the (analytic) transformed integrand.
  const double w = b - a;
  const bool upper = (which == Singular::upper);
  auto g = [&](double t) -> double {
    double e = std::exp(1.0 - 1.0 / t);
    if (e < 1e-300) return 0.0;
    double off = w * e;
    double x = upper ? b - off : a + off;
    if (upper ? !(x < b) : !(x > a)) return 0.0;  // rounded onto the endpoint
    double y = f(x);
    if (!std::isfinite(y))
      throw NonFiniteError("integrand non-finite at x = " + std::to_string(x));
    return y * off / (t * t);
  };

  const double t_cut = 1.0 / 680.0;
  QuadResult res = integrate_double_exp(
      [&](double tau) { return g(t_cut + (1.0 - t_cut) * tau) * (1.0 - t_cut); }, 0.0, 1.0, cfg);

  // int_0^{t_cut} g by downward extrapolation: Newton quartic through five
  // nodes just above t_cut (g is analytic at t = 0 for integrable f). The
  // last Newton term doubles as the error estimate.
  constexpr int kTail = 5;
  double tn[kTail], gn[kTail];
  bool all_zero = true;
  for (int i = 0; i < kTail; ++i) {
    tn[i] = t_cut * (1.0 + 0.2 * i);
    gn[i] = g(tn[i]);
    if (gn[i] != 0.0) all_zero = false;
  }
  res.evaluations += kTail;
  if (!all_zero) {
    double dd[kTail];  // divided differences, in place
    for (int i = 0; i < kTail; ++i) dd[i] = gn[i];
    for (int k = 1; k < kTail; ++k)
      for (int i = kTail - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (tn[i] - tn[i - k]);
    // integrate the Newton basis polynomials over [0, t_cut]
    double basis[kTail + 1] = {1.0};  // coefficients of prod_{j<k} (t - t_j)
    int deg = 0;
    double tail = 0.0, last_term = 0.0;
    for (int k = 0; k < kTail; ++k) {
      double integral = 0.0;
      for (int j = 0; j <= deg; ++j)
        integral += basis[j] * std::pow(t_cut, j + 1) / (j + 1);
      last_term = dd[k] * integral;
      tail += last_term;
      // multiply basis by (t - t_k)
      for (int j = deg + 1; j >= 1; --j) basis[j] = (j <= deg ? basis[j] : 0.0) * (-tn[k]) + basis[j - 1];
      basis[0] *= -tn[k];
      ++deg;
    }
    res.value += tail;
    res.error_estimate += std::abs(last_term) + 1e-13 * std::abs(tail);
    res.converged = res.error_estimate <= cfg.tolerance_for(res.value);
  }
  return res;
}

QuadResult integrate_double_exp(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw std::invalid_argument("integrate_double_exp: requires a < b");
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  QuadResult res;
  auto eval_at = [&](const TsNode& n) {
    double x;
    if (n.side == 0)
      x = c;
    else if (n.side < 0)
      x = a + hw * n.dist;
    else
      x = b - hw * n.dist;
    if (!(x > a) || !(x < b)) return 0.0;  // rounded onto an endpoint
    double y = f(x);
    if (!std::isfinite(y))
      throw NonFiniteError("integrand non-finite at x = " + std::to_string(x));
    return n.weight * y;
  };

  std::vector<TsNode> nodes;
  double h = 1.0;
  ts_nodes(h, false, nodes);
  double sum = 0.0;
  for (const auto& n : nodes) sum += eval_at(n);
  res.evaluations += static_cast<long>(nodes.size());
  double prev = sum * h * hw;
  const int max_level = 12;
  for (int lvl = 1; lvl <= max_level; ++lvl) {
    h *= 0.5;
    ts_nodes(h, true, nodes);
    for (const auto& n : nodes) sum += eval_at(n);
    res.evaluations += static_cast<long>(nodes.size());
    double cur = sum * h * hw;
    double err = std::abs(cur - prev);
    res.value = cur;
    res.error_estimate = err;
    if (lvl >= 2 && err <= cfg.tolerance_for(cur)) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = res.error_estimate <= cfg.tolerance_for(res.value);
  return res;
}

namespace {
std::string fmt_err(const char* what, const QuadResult& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s did not converge: value=%.8g err=%.3g evals=%ld", what,
                r.value, r.error_estimate, r.evaluations);
  return buf;
}
}  // namespace

double integrate_or_throw(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  QuadResult r = integrate(f, a, b, cfg);
  if (!r.converged) throw QuadratureError(fmt_err("integrate", r));
  return r.value;
}

double integrate_singular_or_throw(const Integrand& f, double a, double b,
                                   Singular which, const QuadConfig& cfg) {
  QuadResult r = integrate_log_singular(f, a, b, which, cfg);
  if (!r.converged) throw QuadratureError(fmt_err("integrate_log_singular", r));
  return r.value;
}

double integrate_de_or_throw(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  QuadResult r = integrate_double_exp(f, a, b, cfg);
  if (!r.converged) throw QuadratureError(fmt_err("integrate_double_exp", r));
  return r.value;
}

}  // namespace volterra
