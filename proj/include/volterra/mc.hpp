#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace volterra {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

/// Sum with a fixed pairwise reduction tree, so the result depends only on
/// the slot order, never on thread scheduling.
double pairwise_sum(std::span<const double> v);

/// Mean / standard error via pairwise sums over per-path slots.
MCEstimate mc_from_samples(std::span<const double> samples, std::uint64_t seed);

/// Run body(i) for i in [0,n) over `workers` threads in contiguous blocks.
/// Bodies write to disjoint preallocated slots; aggregation stays deterministic.
void parallel_paths(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace volterra
