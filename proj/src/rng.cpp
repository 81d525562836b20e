#include "nmskit/rng.hpp"

#include <cmath>

namespace nmskit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::size_t Rng::below(std::size_t n) {
  // Lemire's multiply-shift; bias is below 2^-64 * n.
  __extension__ using u128 = unsigned __int128;
  const u128 product = static_cast<u128>(engine_()) * static_cast<u128>(n);
  return static_cast<std::size_t>(product >> 64);
}

}  // namespace nmskit
