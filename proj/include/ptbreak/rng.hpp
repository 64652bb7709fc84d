#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ptbreak {

/// Counter-based splittable random stream.
///
/// A stream is identified by a 64-bit key; the n-th output is a hash of
/// (key, n).  child(i) derives a statistically independent stream from the
/// parent key, so realization i of a Monte Carlo run produces the same
/// numbers no matter which thread computes it or in which order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ kStreamSalt)) {}

  RngStream child(std::uint64_t index) const {
    return RngStream(mix(key_ ^ mix(index + kChildSalt)), kRawTag{});
  }

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  /// Uniform on the open interval (0,1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal deviate (Box-Muller; the second member of each pair
  /// is cached, so draws come in deterministic order).
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double a = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t key() const { return key_; }

 private:
  struct kRawTag {};
  RngStream(std::uint64_t key, kRawTag) : key_(key) {}

  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStreamSalt = 0x8BADF00D5EEDF00Dull;
  static constexpr std::uint64_t kChildSalt = 0xC2B2AE3D27D4EB4Full;

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ptbreak
