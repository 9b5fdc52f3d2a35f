#pragma once

#include <cstdint>

namespace volterra {

/// Counter-based stream (Philox4x32-10). A stream is a value: copying it and
/// replaying produces the identical sequence, and distinct (seed, stream_id)
/// pairs give statistically independent streams. Path i of a Monte-Carlo run
/// always consumes substream i, so results do not depend on worker count.
///
/// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
class RngStream {
public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  /// Independent child stream; deterministic function of (parent, id).
  RngStream substream(std::uint64_t id) const { return RngStream(seed_, mix_(stream_id_, id)); }

  /// Uniform on [0,1).
  double uniform();
  /// Uniform on (0,1] (never returns 0; used for logs).
  double uniform_pos();
  /// Standard normal (Box-Muller, second value cached).
  double gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

private:
  static std::uint64_t mix_(std::uint64_t a, std::uint64_t b);
  void refill_();
  std::uint64_t next_bits_();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_lo_ = 0;
  std::uint64_t counter_hi_ = 0;
  std::uint32_t key_[2] = {0, 0};
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_pos_ = 4;  // empty
  double cached_gauss_ = 0.0;
  bool has_gauss_ = false;
};

}  // namespace volterra
