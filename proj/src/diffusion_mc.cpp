#include "volterra/diffusion_mc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "volterra/volterra_fn.hpp"

namespace volterra {

namespace {
constexpr double kDtFloor = 1e-14;

double catmull(double p0, double p1, double p2, double p3, double u) {
  return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                        u * (3.0 * (p1 - p2) + p3 - p0)));
}
}  // namespace

DriftTable::DriftTable(double T, double lambda) : T_(T), lambda_(lambda) {
  if (!(T > 0.0) || !(lambda > 0.0)) throw std::invalid_argument("DriftTable: T, lambda > 0");
  la_lo_ = -46.2;
  la_hi_ = 6.75;
  dla_ = 0.08;
  na_ = static_cast<int>((la_hi_ - la_lo_) / dla_) + 2;
  dlb_ = 0.08;
  lb_hi_ = std::log(T * lambda) + 2.0 * dlb_;
  lb_lo_ = lb_hi_ - 33.0;
  nb_ = static_cast<int>((lb_hi_ - lb_lo_) / dlb_) + 2;
  log_n_.resize(static_cast<std::size_t>(na_) * nb_);
  log_m_.resize(static_cast<std::size_t>(na_) * nb_);
  // fixed tanh-sinh nodes over u in (0,1); nu((1-u) beta) is shared by the
  // whole alpha-row of each beta-column, which makes the build cheap
  std::vector<double> un, uw;
  {
    const double pi2 = 1.5707963267948966;
    const double h = 1.0 / 64.0;
    for (int k = -4096; k <= 4096; ++k) {
      double y = pi2 * std::sinh(k * h);
      if (std::abs(y) > 48.0) continue;
      double ch = std::cosh(y);
      double w = h * 0.5 * pi2 * std::cosh(k * h) / (ch * ch);
      double e2 = std::exp(-2.0 * std::abs(y));
      double dist = e2 / (1.0 + e2);  // half-width units from nearer endpoint
      double u = y >= 0.0 ? 1.0 - dist : dist;
      if (u <= 0.0 || u >= 1.0) continue;
      un.push_back(u);
      uw.push_back(w);
    }
  }
  std::vector<double> nu_col(un.size());
  for (int ib = 0; ib < nb_; ++ib) {
    double beta = std::exp(lb_lo_ + ib * dlb_);
    for (std::size_t j = 0; j < un.size(); ++j) nu_col[j] = uw[j] * fast::nu((1.0 - un[j]) * beta);
    for (int ia = 0; ia < na_; ++ia) {
      double alpha = std::exp(la_lo_ + ia * dla_);
      double n = 0.0, m = 0.0;
      for (std::size_t j = 0; j < un.size(); ++j) {
        double e = -alpha / un[j];
        if (e < -745.0) continue;
        double q = std::exp(e) / un[j] * nu_col[j];
        n += q;
        m += q / un[j];
      }
      std::size_t k = static_cast<std::size_t>(ia) * nb_ + ib;
      log_n_[k] = std::log(n);
      log_m_[k] = std::log(m);
    }
  }
}

std::shared_ptr<const DriftTable> DriftTable::get(double T, double lambda) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<const DriftTable>> cache;
  std::lock_guard<std::mutex> g(mu);
  auto key = std::make_pair(T, lambda);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto tab = std::make_shared<const DriftTable>(T, lambda);
  cache[key] = tab;
  return tab;
}

double DriftTable::value(const std::vector<double>& tab, double la, double lb) const {
  double sa = (la - la_lo_) / dla_;
  double sb = (lb - lb_lo_) / dlb_;
  int ia = static_cast<int>(sa), ib = static_cast<int>(sb);
  ia = std::clamp(ia, 1, na_ - 3);
  ib = std::clamp(ib, 1, nb_ - 3);
  double ua = std::clamp(sa - ia, -1.0, 2.0);
  double ub = std::clamp(sb - ib, -1.0, 2.0);
  double rows[4];
  for (int j = -1; j <= 2; ++j) {
    const double* row = &tab[static_cast<std::size_t>(ia + j) * nb_ + (ib - 1)];
    rows[j + 1] = catmull(row[0], row[1], row[2], row[3], ub);
  }
  return catmull(rows[0], rows[1], rows[2], rows[3], ua);
}

double DriftTable::bbar(double h, double r) const {
  if (h <= 0.0 || r <= 0.0) return 0.0;
  double alpha = r * r / (2.0 * h);
  if (alpha > 700.0) return 0.0;
  double la = std::log(std::max(alpha, 1e-20));
  double lb = std::log(h * lambda_);
  double n = std::exp(value(log_n_, la, lb));
  double m = std::exp(value(log_m_, la, lb));
  return r / h * m / (1.0 + n);
}

double DriftTable::mass_h(double h, double r) const {
  if (h <= 0.0) return 0.0;
  double alpha = r * r / (2.0 * h);
  if (alpha > 700.0) return 0.0;
  double la = std::log(std::max(alpha, 1e-20));
  double lb = std::log(h * lambda_);
  return std::exp(value(log_n_, la, lb));
}

void run_radial_path(const ModelParams& P, const SimConfig& cfg, const DriftTable& tab,
                     double t_end, RngStream& rng,
                     const std::function<bool(double, double, double, double)>& visit,
                     long* underflow_steps) {
  P.validate();
  cfg.validate();
  double t = 0.0, r = cfg.x0;
  long underflow = 0;
  while (t < t_end) {
    double dt = cfg.dt_max;
    if (r < cfg.dt_shrink_radius) {
      dt = std::min(dt, r * r / 20.0);
      if (dt < kDtFloor) {
        dt = kDtFloor;
        ++underflow;
      }
    }
    if (t + dt > t_end) dt = t_end - t;
    if (dt <= 0.0) break;
    double sq = std::sqrt(dt);
    double h = P.T - t;  // remaining horizon; drift off after T
    double r_new;
    if (r > 4.0 * sq) {
      double drift = (0.5 / r - tab.bbar(h, r)) * dt;
      r_new = std::abs(r + drift + sq * rng.gaussian());
    } else {
      // exact planar move; the 1/(2r) Bessel term is implicit and the drift,
      // subdominant at this scale, acts radially at the scale max(r, sqrt(dt))
      double b = tab.bbar(h, std::max(r, sq));
      double x1 = r - b * dt + sq * rng.gaussian();
      double x2 = sq * rng.gaussian();
      r_new = std::hypot(x1, x2);
    }
    t += dt;
    bool keep = visit(t, r, r_new, dt);
    r = r_new;
    if (!keep) break;
  }
  if (underflow_steps) *underflow_steps += underflow;
}

void run_bessel2_path(double x0, double dt_max, double t_end, RngStream& rng,
                      const std::function<bool(double, double, double, double)>& visit) {
  double t = 0.0, x1 = x0, x2 = 0.0;
  while (t < t_end) {
    double dt = std::min(dt_max, t_end - t);
    if (dt <= 0.0) break;
    double sq = std::sqrt(dt);
    double r0 = std::hypot(x1, x2);
    x1 += sq * rng.gaussian();
    x2 += sq * rng.gaussian();
    double r1 = std::hypot(x1, x2);
    t += dt;
    if (!visit(t, r0, r1, dt)) break;
  }
}

DiffusionPath simulate_radial(const ModelParams& P, const SimConfig& cfg, RngStream& rng,
                              int record_stride) {
  auto tab = DriftTable::get(P.T, P.lambda);
  DiffusionPath path;
  path.times.push_back(0.0);
  path.radii.push_back(cfg.x0);
  long k = 0;
  run_radial_path(P, cfg, *tab, P.T, rng,
                  [&](double t, double, double r_new, double) {
                    if (++k % record_stride == 0) {
                      path.times.push_back(t);
                      path.radii.push_back(r_new);
                    }
                    return true;
                  },
                  &path.underflow_steps);
  return path;
}

LocalTimeObserver::LocalTimeObserver(double eps, double origin_threshold, RngStream bridge_rng)
    : rng_(bridge_rng), eps_(eps), thr_(origin_threshold), log_inv_eps_(std::log(1.0 / eps)) {
  if (!(eps > 0.0) || !(origin_threshold > 0.0) || !(origin_threshold < eps))
    throw std::invalid_argument("LocalTimeObserver: requires 0 < threshold < eps");
}

bool LocalTimeObserver::crossed_down(double level, double r0, double r1, double dt) {
  if (r1 <= level) return true;
  if (r0 <= level) return false;  // started below; not a new downcrossing
  double e = -2.0 * (r0 - level) * (r1 - level) / dt;
  return e > -40.0 && rng_.uniform() < std::exp(e);
}

bool LocalTimeObserver::crossed_up(double level, double r0, double r1, double dt) {
  if (r1 >= level) return true;
  if (r0 >= level) return false;
  double e = -2.0 * (level - r0) * (level - r1) / dt;
  return e > -40.0 && rng_.uniform() < std::exp(e);
}

void LocalTimeObserver::step(double t_new, double r_old, double r_new, double dt) {
  if (r_new <= eps_) occupation_time_ += dt;
  if (!wait_up_) {
    if (crossed_down(thr_, r_old, r_new, dt)) {
      ++n_down_;
      down_since_ = t_new - 0.5 * dt;
      wait_up_ = true;
    }
  } else if (crossed_up(eps_, r_old, r_new, dt)) {
    upcross_time_ += t_new - 0.5 * dt - down_since_;
    down_since_ = -1.0;
    wait_up_ = false;
  }
  if (!ann_wait_up_) {
    if (crossed_down(eps_, r_old, r_new, dt)) {
      ++n_ann_;
      ann_wait_up_ = true;
    }
  } else if (crossed_up(2.0 * eps_, r_old, r_new, dt)) {
    ann_wait_up_ = false;
  }
}

LocalTimeEstimates LocalTimeObserver::finalize(double t_final) const {
  LocalTimeEstimates e;
  e.eps = eps_;
  double li = log_inv_eps_;
  e.occupation = occupation_time_ / (2.0 * eps_ * eps_ * li * li);
  e.downcross_origin = n_down_ / (2.0 * li);
  double up = upcross_time_;
  if (wait_up_ && down_since_ >= 0.0) up += t_final - down_since_;
  e.upcross_duration = up / (eps_ * eps_ * li);
  e.downcross_annulus = std::log(2.0) / (2.0 * li * li) * n_ann_;
  e.n_downcross = n_down_;
  e.n_annulus = n_ann_;
  return e;
}

double origin_threshold(double eps) {
  double l = std::log(1.0 / eps);
  return std::clamp(std::exp(-l * l), 5e-7, eps / 10.0);
}

std::vector<LocalTimeEstimates> estimate_localtime_path(const ModelParams& P,
                                                        const SimConfig& cfg,
                                                        const DriftTable& tab,
                                                        RngStream& rng) {
  std::vector<LocalTimeObserver> obs;
  obs.reserve(cfg.eps_levels.size());
  for (std::size_t k = 0; k < cfg.eps_levels.size(); ++k)
    obs.emplace_back(cfg.eps_levels[k], origin_threshold(cfg.eps_levels[k]),
                     rng.substream(1000 + k));
  run_radial_path(P, cfg, tab, P.T, rng, [&](double t, double r0, double r1, double dt) {
    for (auto& o : obs) o.step(t, r0, r1, dt);
    return true;
  });
  std::vector<LocalTimeEstimates> out;
  out.reserve(obs.size());
  for (auto& o : obs) out.push_back(o.finalize(P.T));
  return out;
}

MCEstimate hitting_prob_mc(const ModelParams& P, double eps, const SimConfig& cfg,
                           RngStream rng, int workers) {
  P.validate();
  cfg.validate();
  if (!(eps > 0.0 && eps < cfg.x0)) throw std::invalid_argument("hitting_prob_mc: 0 < eps < x0");
  auto tab = DriftTable::get(P.T, P.lambda);
  std::vector<double> hits(cfg.n_paths, 0.0);
  parallel_paths(cfg.n_paths, workers, [&](std::size_t i) {
    RngStream s = rng.substream(i);
    bool hit = false;
    run_radial_path(P, cfg, *tab, P.T, s, [&](double, double r0, double r1, double dt) {
      if (r1 <= eps) {
        hit = true;
        return false;
      }
      if (r0 > eps) {
        double p = std::exp(-2.0 * (r0 - eps) * (r1 - eps) / dt);
        if (p > 0.0 && s.uniform() < p) {
          hit = true;
          return false;
        }
      }
      return true;
    });
    hits[i] = hit ? 1.0 : 0.0;
  });
  return mc_from_samples(hits, rng.seed());
}

MCEstimate hitting_prob_is(const ModelParams& P, double eps, const SimConfig& cfg,
                           RngStream rng, int workers) {
  P.validate();
  cfg.validate();
  if (!(eps > 0.0 && eps < cfg.x0)) throw std::invalid_argument("hitting_prob_is: 0 < eps < x0");
  auto tab = DriftTable::get(P.T, P.lambda);
  double denom = 1.0 + big_h(P.T, P.lambda, cfg.x0, P.quad);
  std::vector<double> w(cfg.n_paths, 0.0);
  parallel_paths(cfg.n_paths, workers, [&](std::size_t i) {
    RngStream s = rng.substream(i);
    double weight = 0.0;
    run_bessel2_path(cfg.x0, cfg.dt_max, P.T, s, [&](double t, double r0, double r1, double dt) {
      double t_hit = -1.0;
      if (r1 <= eps) {
        t_hit = t;
      } else if (r0 > eps) {
        double p = std::exp(-2.0 * (r0 - eps) * (r1 - eps) / dt);
        if (p > 0.0 && s.uniform() < p) t_hit = t - 0.5 * dt;
      }
      if (t_hit >= 0.0 && t_hit < P.T) {
        weight = 1.0 + tab->mass_h(P.T - t_hit, eps);
        return false;
      }
      return true;
    });
    w[i] = weight / denom;
  });
  return mc_from_samples(w, rng.seed());
}

double origin_visit_prob(const ModelParams& P, double x0) {
  P.validate();
  if (!(x0 > 0.0)) throw std::domain_error("origin_visit_prob: x0 > 0");
  double H = big_h(P.T, P.lambda, x0, P.quad);
  return H / (1.0 + H);
}

double bessel_green(double ell, double x, double y) {
  if (!(ell > 0.0) || x < 0.0 || x > ell || y < 0.0 || y > ell)
    throw std::domain_error("bessel_green: requires 0 <= x,y <= ell");
  if (y < x) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();  // vacuous: y < 0 impossible
    return 2.0 * y * std::log(ell / x);
  }
  if (y == 0.0) return 0.0;
  return 2.0 * y * std::log(ell / y);
}

MCEstimate localtime_law_mc(const ModelParams& P, const SimConfig& cfg, double beta,
                            RngStream rng, int workers) {
  P.validate();
  cfg.validate();
  if (cfg.eps_levels.empty()) throw std::invalid_argument("localtime_law_mc: needs eps levels");
  auto tab = DriftTable::get(P.T, P.lambda);
  double eps = cfg.eps_levels.back();
  double thr = origin_threshold(eps);
  std::vector<double> vals(cfg.n_paths, 0.0);
  parallel_paths(cfg.n_paths, workers, [&](std::size_t i) {
    RngStream s = rng.substream(i);
    LocalTimeObserver obs(eps, thr, s.substream(1000));
    run_radial_path(P, cfg, *tab, P.T, s, [&](double t, double r0, double r1, double dt) {
      obs.step(t, r0, r1, dt);
      return true;
    });
    vals[i] = std::exp(beta * obs.finalize(P.T).downcross_annulus);
  });
  return mc_from_samples(vals, rng.seed());
}

}  // namespace volterra
