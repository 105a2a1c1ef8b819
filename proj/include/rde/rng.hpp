#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace rde {

/// Deterministic 64-bit PRNG handle. Identical seed + identical call
/// sequence yields identical outputs on every platform: the engine is the
/// standard-specified mt19937_64 and all derived draws below avoid the
/// implementation-defined std distributions.
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
    const std::uint64_t bound =
        std::numeric_limits<std::uint64_t>::max() - rem;  // largest multiple of n
    std::uint64_t r = next_u64();
    while (r >= bound) r = next_u64();
    return r % n;
  }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 finalizer, used to derive independent sub-seeds from a base
/// seed without correlating the resulting streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace rde
