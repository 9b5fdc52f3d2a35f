#include "volterra/rng.hpp"

#include <cmath>

namespace volterra {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::mix_(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) + b);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t k = splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 0x9E3779B97F4A7C15ull + 1));
  key_[0] = static_cast<std::uint32_t>(k);
  key_[1] = static_cast<std::uint32_t>(k >> 32);
}

void RngStream::refill_() {
  std::uint32_t x0 = static_cast<std::uint32_t>(counter_lo_);
  std::uint32_t x1 = static_cast<std::uint32_t>(counter_lo_ >> 32);
  std::uint32_t x2 = static_cast<std::uint32_t>(counter_hi_);
  std::uint32_t x3 = static_cast<std::uint32_t>(counter_hi_ >> 32);
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, x0, hi0, lo0);
    mulhilo(kPhiloxM1, x2, hi1, lo1);
    std::uint32_t y0 = hi1 ^ x1 ^ k0;
    std::uint32_t y1 = lo1;
    std::uint32_t y2 = hi0 ^ x3 ^ k1;
    std::uint32_t y3 = lo0;
    x0 = y0; x1 = y1; x2 = y2; x3 = y3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  buf_[0] = x0; buf_[1] = x1; buf_[2] = x2; buf_[3] = x3;
  buf_pos_ = 0;
  if (++counter_lo_ == 0) ++counter_hi_;
}

std::uint64_t RngStream::next_bits_() {
  if (buf_pos_ > 2) refill_();
  std::uint64_t v = (static_cast<std::uint64_t>(buf_[buf_pos_]) << 32) | buf_[buf_pos_ + 1];
  buf_pos_ += 2;
  return v;
}

double RngStream::uniform() {
  return static_cast<double>(next_bits_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(next_bits_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_gauss_) {
    has_gauss_ = false;
    return cached_gauss_;
  }
  double u1 = uniform_pos();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 6.283185307179586476925286766559 * u2;
  cached_gauss_ = r * std::sin(theta);
  has_gauss_ = true;
  return r * std::cos(theta);
}

}  // namespace volterra
