#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace nmskit {

/// Seeded pseudo-random source. Streams derived with split() are independent
/// of each other and of the parent's consumption, so each check can draw from
/// its own stream without perturbing the others.
///
/// Only the raw 64-bit engine output is used (its sequence is fixed by the
/// standard); the conversions to reals and indices are done here so results
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Log-uniform on [lo, hi]; requires 0 < lo <= hi.
  double log_uniform(double lo, double hi);
  /// Uniform index in [0, n); n must be positive.
  std::size_t below(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace nmskit
