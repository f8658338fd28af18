#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace udn::rng {

// Philox-4x32-10 counter-based block cipher. Stateless: the caller owns the
// (counter, key) pair, so any draw is addressable directly and trials can be
// generated in parallel without shared state.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Counter block(Counter x, Key k) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
      if (round < 9) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
    }
    return x;
  }
};

// A lazily-buffered draw sequence addressed by (seed, trial, stream, attempt).
// The counter encodes (block index, stream | attempt << 8, trial lo, trial hi)
// and the key holds the user seed, so every (trial, stream) pair yields an
// independent substream no matter which thread consumes it.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream,
               std::uint32_t attempt = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        prefix_{0u, stream | (attempt << 8), static_cast<std::uint32_t>(trial),
                static_cast<std::uint32_t>(trial >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      buffer_ = Philox4x32::block({prefix_[0], prefix_[1], prefix_[2], prefix_[3]}, key_);
      ++prefix_[0];
      pos_ = 0;
    }
    return buffer_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // uniform on the open interval (0, 1), 52-bit resolution
  double next_unit() {
    const std::uint64_t bits = next_u64() >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1p-52;
  }

  // unit-mean exponential (Rayleigh fading power)
  double next_exponential() { return -std::log(next_unit()); }

  // Poisson via unit-rate arrival counting; exact for any mean, O(mean) draws
  std::uint64_t next_poisson(double mean) {
    std::uint64_t n = 0;
    double acc = next_exponential();
    while (acc <= mean) {
      ++n;
      acc += next_exponential();
    }
    return n;
  }

 private:
  Philox4x32::Key key_;
  std::array<std::uint32_t, 4> prefix_;
  std::array<std::uint32_t, 4> buffer_{};
  int pos_ = 4;
};

}  // namespace udn::rng
