#pragma once

#include <cstdint>
#include <cmath>

namespace excone {

/// Deterministic, platform-independent random stream (splitmix64 core).
/// Distribution helpers are hand-rolled so results do not depend on the
/// standard library's <random> implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  /// Substream derivation: mixing (seed, index) gives independent workers
  /// whose merged output is independent of scheduling.
  static RngStream derived(std::uint64_t seed, std::uint64_t index) {
    RngStream mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    mixer.next_u64();
    return mixer;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1] (safe for logarithms).
  double next_uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; caches the second draw.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_uniform_pos();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace excone
