#include "volterra/mc.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace volterra {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

MCEstimate mc_from_samples(std::span<const double> samples, std::uint64_t seed) {
  MCEstimate e;
  e.n_paths = samples.size();
  e.seed = seed;
  if (samples.empty()) return e;
  double s = pairwise_sum(samples);
  e.mean = s / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      double d = samples[i] - e.mean;
      sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return e;
}

void parallel_paths(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  if (workers < 1) workers = 1;
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace volterra
