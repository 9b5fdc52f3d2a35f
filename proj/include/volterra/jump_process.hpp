#pragma once

#include <functional>
#include <vector>

#include "volterra/kernels.hpp"
#include "volterra/rng.hpp"

namespace volterra {

/// Thrown when the exact-step rejection sampler loops pathologically.
class RejectionStallError : public std::runtime_error {
public:
  explicit RejectionStallError(const std::string& what) : std::runtime_error(what) {}
};

/// Jump-rate density of the Volterra jump process at state a, target b in (a,T):
/// nu((T-b)l) / ((b-a) nu((T-a)l)).
double jump_rate_density(const ModelParams& P, double a, double b);
/// Rate of the killing jump to the absorbing state T: 1/nu((T-a) lambda).
double death_rate(const ModelParams& P, double a);

/// Transition kernel over local time s from state a: absolutely continuous
/// part D on [a,T) plus an atom p at T.
double transition_kernel_density(const ModelParams& P, double s, double a, double b);
double transition_atom(const ModelParams& P, double s, double a);
/// int_a^T D db (handles the (b-a)^{s-1} head by exact power substitution).
double transition_kernel_mass(const ModelParams& P, double s, double a);
/// int_{lo}^{hi} D db for histogram bins.
double transition_kernel_bin_mass(const ModelParams& P, double s, double a, double lo, double hi);

/// One exact step of local-time length ds from state a: death with
/// probability p, else a rejection draw from D (power-law proposal
/// b = a + (T-a) U^{1/ds}, acceptance nu((T-b)l)/nu((T-a)l)).
double step_sample(const ModelParams& P, double a, double ds, RngStream& rng);

struct JumpPath {
  std::vector<double> local_times;  // skeleton times, multiples of ds
  std::vector<double> positions;    // increasing, in [0,T]
  bool absorbed = false;
  double terminal_local_time = 0.0;  // S, assigned mid-step when absorbed
};

/// Skeleton simulation by semigroup stepping; visitor form to avoid storing
/// paths when only statistics are needed. on_step(s, position) is called after
/// every step before absorption; returns S.
double simulate_path_visit(const ModelParams& P, double a0, double ds, RngStream& rng,
                           const std::function<void(double, double)>& on_step);
JumpPath simulate_path(const ModelParams& P, double a0, double ds, RngStream& rng);

/// Renewal (expected occupation) density of the process started at a.
double renewal_density(const ModelParams& P, double a, double b);

/// Law of the landing point of the first jump at or above eps, started at 0:
/// atom at T plus a density on (eps, T).
double escape_atom(const ModelParams& P, double eps);
double escape_density(const ModelParams& P, double eps, double b);

/// Radon-Nikodym weight d Pi^{lambda'} / d Pi^{lambda} as a function of the
/// start point eta0 and terminal local time S.
double rn_weight(const ModelParams& P, double lambda_prime, double eta0, double S);

}  // namespace volterra
