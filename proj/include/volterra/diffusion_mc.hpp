#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "volterra/kernels.hpp"
#include "volterra/mc.hpp"
#include "volterra/rng.hpp"

namespace volterra {

struct SimConfig {
  double dt_max = 1e-4;
  double dt_shrink_radius = 0.1;  // below this radius dt scales with r^2
  std::vector<double> eps_levels{0.08, 0.04, 0.02};
  std::size_t n_paths = 1000;
  double x0 = 0.5;

  void validate() const {
    if (!(dt_max > 0.0) || !(dt_shrink_radius > 0.0))
      throw std::invalid_argument("SimConfig: dt_max and dt_shrink_radius must be positive");
    if (!(x0 > 0.0)) throw std::invalid_argument("SimConfig: x0 must be positive");
    for (std::size_t i = 1; i < eps_levels.size(); ++i)
      if (!(eps_levels[i] < eps_levels[i - 1]))
        throw std::invalid_argument("SimConfig: eps_levels must be strictly decreasing");
  }
};

/// Cubic-interpolated table of N(alpha,beta) and M(alpha,beta) on a
/// (log alpha, log beta) grid, for drift and H lookups on simulation hot
/// paths. alpha = r^2/(2h), beta = h lambda with h the remaining horizon.
/// Shared per (T, lambda) through get().
class DriftTable {
public:
  DriftTable(double T, double lambda);
  static std::shared_ptr<const DriftTable> get(double T, double lambda);

  /// bbar_h(r) = (r/h) M/(1+N); 0 for h <= 0 or far outside the Gaussian range.
  double bbar(double h, double r) const;
  /// H_h(r) via the N table (same accuracy as bbar).
  double mass_h(double h, double r) const;

  double T() const { return T_; }
  double lambda() const { return lambda_; }

private:
  double value(const std::vector<double>& tab, double la, double lb) const;
  double T_, lambda_;
  double la_lo_, la_hi_, lb_lo_, lb_hi_, dla_, dlb_;
  int na_ = 0, nb_ = 0;
  std::vector<double> log_n_, log_m_;  // row-major [ia*nb + ib]
};

struct DiffusionPath {
  std::vector<double> times;
  std::vector<double> radii;
  long underflow_steps = 0;  // steps clamped at the 1e-14 dt floor
};

/// Euler-Maruyama radial path on [0, t_end] with adaptive dt and reflection
/// at 0; near the origin the step switches to an exact 2d-Gaussian move with
/// the (subdominant) drift applied radially. visit(t_new, r_old, r_new, dt)
/// runs after every step; returning false stops the path early.
void run_radial_path(const ModelParams& P, const SimConfig& cfg, const DriftTable& tab,
                     double t_end, RngStream& rng,
                     const std::function<bool(double, double, double, double)>& visit,
                     long* underflow_steps = nullptr);

/// Plain 2d Brownian radius (exact Gaussian increments), fixed dt.
void run_bessel2_path(double x0, double dt_max, double t_end, RngStream& rng,
                      const std::function<bool(double, double, double, double)>& visit);

/// Recorded path (subsampled to ~record_stride steps) for export.
DiffusionPath simulate_radial(const ModelParams& P, const SimConfig& cfg, RngStream& rng,
                              int record_stride = 16);

struct LocalTimeEstimates {
  double eps = 0.0;
  double occupation = 0.0;        // L^eps
  double downcross_origin = 0.0;  // l^eps  (origin-threshold downcrossings)
  double upcross_duration = 0.0;  // bold L^eps (cumulative upcrossing time)
  double downcross_annulus = 0.0; // ltilde^eps (eps -> 2 eps crossings)
  long n_downcross = 0;
  long n_annulus = 0;
};

/// Online observer for one path and one eps level. Level crossings between
/// step endpoints are recovered with Brownian-bridge probabilities, drawn
/// from a dedicated stream so the path noise is untouched.
class LocalTimeObserver {
public:
  LocalTimeObserver(double eps, double origin_threshold, RngStream bridge_rng);
  void step(double t_new, double r_old, double r_new, double dt);
  LocalTimeEstimates finalize(double t_final) const;

private:
  bool crossed_down(double level, double r0, double r1, double dt);
  bool crossed_up(double level, double r0, double r1, double dt);
  RngStream rng_;
  double eps_, thr_, log_inv_eps_;
  double occupation_time_ = 0.0;
  double upcross_time_ = 0.0;
  double down_since_ = -1.0;  // current downcrossing start, <0 if none
  bool wait_up_ = false;
  bool ann_wait_up_ = false;
  long n_down_ = 0;
  long n_ann_ = 0;
};

/// Numerical-origin threshold used for downcrossing detection at level eps:
/// clamp(exp(-log^2(1/eps)), 5e-7, eps/10), which vanishes faster than any
/// power of eps (what the downcrossing theorems need) while staying above
/// the dt-floor reflection scale.
double origin_threshold(double eps);

/// Run one path and return estimates at every eps level.
std::vector<LocalTimeEstimates> estimate_localtime_path(const ModelParams& P,
                                                        const SimConfig& cfg,
                                                        const DriftTable& tab, RngStream& rng);

/// P[ hit radius eps before T ] by direct simulation of the drifted SDE,
/// with Brownian-bridge crossing correction.
MCEstimate hitting_prob_mc(const ModelParams& P, double eps, const SimConfig& cfg,
                           RngStream rng, int workers = 1);

/// Same probability by importance sampling over plain Bessel(2) paths
/// (exact 2d Gaussian increments), weighting (1+H_{T-S}(eps))/(1+H_T(x0))
/// at the hitting time.
MCEstimate hitting_prob_is(const ModelParams& P, double eps, const SimConfig& cfg,
                           RngStream rng, int workers = 1);

/// Closed form P[origin visited] = H_T(x0)/(1+H_T(x0)).
double origin_visit_prob(const ModelParams& P, double x0);

/// Green's function of the 2d Bessel process killed at radius ell.
double bessel_green(double ell, double x, double y);

/// E[e^{beta L_T}] estimated through the annulus estimator at the finest
/// eps level of cfg, from x0 near the origin.
MCEstimate localtime_law_mc(const ModelParams& P, const SimConfig& cfg, double beta,
                            RngStream rng, int workers = 1);

}  // namespace volterra
