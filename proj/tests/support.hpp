#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nmskit/space.hpp"

namespace testing {

inline bool near(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

// Hand-rolled generators; std::mt19937_64 output is fixed by the standard.
struct Gen {
  explicit Gen(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng() % n); }
  std::mt19937_64 eng;
};

inline nmskit::NormPair minmax() { return nmskit::NormPair::named("min", "max"); }

inline nmskit::NmsSpace real_line(double lo = -10, double hi = 10) {
  return nmskit::standard_from_metric(nmskit::Universe::real_vector(1, nmskit::BaseMetric::euclidean, lo, hi),
                                      minmax());
}

inline std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("p" + std::to_string(i));
  return v;
}

// n random points in the unit square under the euclidean metric.
inline nmskit::NmsSpace random_planar(Gen& g, std::size_t n) {
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < n; ++i) coords.push_back({g.unit(), g.unit()});
  return nmskit::standard_from_metric(
      nmskit::Universe::from_coordinates(labels(n), coords, nmskit::BaseMetric::euclidean), minmax());
}

// Standard-construction degrees, computed from the distance directly.
inline nmskit::DegreesTriple standard_degrees(double d, double lambda) {
  if (lambda <= 0) return {0, 1, 1};
  return {lambda / (lambda + d), d / (lambda + d), d / lambda};
}

inline nmskit::Point pt(double x) { return nmskit::Point{{x}}; }

}  // namespace testing
