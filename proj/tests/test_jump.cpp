#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "volterra/jump_process.hpp"
#include "volterra/volterra_fn.hpp"

using namespace volterra;

namespace {
ModelParams params() {
  ModelParams P;
  P.T = 1.0;
  P.lambda = 1.0;
  P.quad = QuadConfig{1e-10, 1e-10, 4000};
  return P;
}
}  // namespace

TEST_CASE("jump rate density behavior") {
  ModelParams P = params();
  // (b-a) * density -> 1 as b -> a+
  for (double gap : {1e-3, 1e-6, 1e-9})
    CHECK(gap * jump_rate_density(P, 0.3, 0.3 + gap) == doctest::Approx(1.0).epsilon(1e-2));
  // translation symmetry J^T(a, b) = J^{T-a}(0, b-a)
  ModelParams Q = P;
  Q.T = 0.7;
  CHECK(jump_rate_density(P, 0.3, 0.8) == doctest::Approx(jump_rate_density(Q, 0.0, 0.5)).epsilon(1e-12));
  CHECK(death_rate(P, 0.3) == doctest::Approx(death_rate(Q, 0.0)).epsilon(1e-12));
  // total mass above a + delta grows like log(1/delta)
  auto mass_above = [&](double delta) {
    return integrate_or_throw([&](double b) { return jump_rate_density(P, 0.0, b); }, delta,
                              P.T, P.quad);
  };
  double m2 = mass_above(1e-2), m4 = mass_above(1e-4);
  CHECK(m4 - m2 == doctest::Approx(std::log(1e2)).epsilon(0.25));
}

TEST_CASE("transition kernel mass and the s -> 0 delta limit") {
  ModelParams P = params();
  for (double s : {0.001, 0.5, 2.0})
    for (double a : {0.0, 0.6}) {
      double mass = transition_kernel_mass(P, s, a) + transition_atom(P, s, a);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
  // mass escapes [a, a+delta] only slowly as s -> 0
  double escaped = 1.0 - transition_kernel_bin_mass(P, 1e-4, 0.2, 0.2, 0.21) -
                   transition_atom(P, 1e-4, 0.2);
  CHECK(escaped < 5e-4);
  CHECK(transition_atom(P, 50.0, 0.2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("step sampler statistics") {
  ModelParams P = params();
  double ds = 0.05, a = 0.2;
  double p_death = transition_atom(P, ds, a);
  RngStream rng(13, 0);
  const int n = 100000;
  int deaths = 0;
  std::vector<double> moved;
  for (int i = 0; i < n; ++i) {
    double b = step_sample(P, a, ds, rng);
    if (b >= P.T)
      ++deaths;
    else
      moved.push_back(b);
  }
  double se = std::sqrt(p_death * (1.0 - p_death) / n);
  CHECK(std::abs(double(deaths) / n - p_death) <= 3.0 * se);
  // chi^2 against the conditional density D/(1-p), 30 bins
  int nb = 30;
  double chi2 = 0.0;
  std::sort(moved.begin(), moved.end());
  for (int k = 0; k < nb; ++k) {
    double lo = a + (P.T - a) * k / nb, hi = a + (P.T - a) * (k + 1) / nb;
    double p = transition_kernel_bin_mass(P, ds, a, lo, hi) / (1.0 - p_death);
    double expect = p * moved.size();
    auto lo_it = std::lower_bound(moved.begin(), moved.end(), lo);
    auto hi_it = std::lower_bound(moved.begin(), moved.end(), hi);
    double got = double(hi_it - lo_it);
    if (expect > 5) chi2 += (got - expect) * (got - expect) / expect;
  }
  CHECK(chi2 < 52.6);  // chi2_29 at 0.5%
  // huge step always dies
  CHECK(step_sample(P, 0.1, 1e3, rng) == P.T);
}

TEST_CASE("path simulation terminal law") {
  ModelParams P = params();
  RngStream r0(1, 1);
  JumpPath at_t = simulate_path(P, P.T, 1e-3, r0);
  CHECK(at_t.absorbed);
  CHECK(at_t.terminal_local_time == 0.0);
  RngStream root(17, 0);
  const int n = 3000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream s = root.substream(i);
    mean += simulate_path_visit(P, 0.0, 1e-3, s, [](double, double) {});
  }
  mean /= n;
  double expect = P.T * P.lambda * fast::nu_prime(P.T * P.lambda) / fast::nu(P.T * P.lambda);
  CHECK(std::abs(mean - expect) < 0.06);
}

TEST_CASE("renewal and escape laws") {
  ModelParams P = params();
  // pre-death position density integrates to one
  auto f = [&](double u) {
    return P.lambda * fast::nu_prime(u * P.lambda) / fast::nu(P.T * P.lambda);
  };
  double mass = integrate_singular_or_throw(f, 0.0, P.T, Singular::lower, P.quad);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(escape_atom(P, 0.1) == doctest::Approx(fast::nu(0.1) / fast::nu(1.0)).epsilon(1e-12));
  double total = escape_atom(P, 0.1) +
                 integrate_or_throw([&](double b) { return escape_density(P, 0.1, b); }, 0.1,
                                    P.T, QuadConfig{1e-8, 1e-8, 4000});
  CHECK(total == doctest::Approx(1.0).epsilon(1e-5));
  // renewal density matches the nu' blow-up near b = a
  double a = 0.2, gap = 1e-8;
  double expect = P.lambda * fast::nu_prime(gap * P.lambda) * fast::nu((P.T - a) * P.lambda) /
                  fast::nu((P.T - a) * P.lambda);
  CHECK(renewal_density(P, a, a + gap) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("radon-nikodym weight") {
  ModelParams P = params();
  CHECK(rn_weight(P, P.lambda, 0.3, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rn_weight(P, 2.0, P.T, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // E_{Pi^l}[weight] = 1 within MC error
  RngStream root(23, 0);
  const int n = 4000;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    RngStream s = root.substream(i);
    double S = simulate_path_visit(P, 0.0, 1e-3, s, [](double, double) {});
    w[i] = rn_weight(P, 1.5, 0.0, S);
  }
  double mean = 0.0, var = 0.0;
  for (double x : w) mean += x;
  mean /= n;
  for (double x : w) var += (x - mean) * (x - mean);
  var /= (n - 1);
  CHECK(std::abs(mean - 1.0) <= 3.0 * std::sqrt(var / n));
}
