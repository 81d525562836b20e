#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmskit/norms.hpp"
#include "nmskit/rng.hpp"

namespace nmskit {

/// A point of a universe. Finite labeled universes use {index}, the naturals
/// use {n}, real vector universes use the coordinates.
struct Point {
  std::vector<double> coords;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point make_point(std::initializer_list<double> coords) { return Point{coords}; }

enum class UniverseKind { finite_labeled, real_vector, naturals };
enum class BaseMetric { euclidean, manhattan, discrete };

std::string to_string(UniverseKind kind);
std::string to_string(BaseMetric metric);
BaseMetric parse_metric(const std::string& name);

class Universe {
 public:
  /// Labeled points with a distance matrix, validated as a metric (zero
  /// diagonal, positive off-diagonal, symmetric and triangle inequality to
  /// within 1e-12).
  static Universe finite(std::vector<std::string> labels,
                         std::vector<std::vector<double>> distances);
  /// Labels only; usable by the tabulated construction, which needs no metric.
  static Universe finite_labels(std::vector<std::string> labels);
  static Universe from_coordinates(std::vector<std::string> labels,
                                   const std::vector<std::vector<double>>& coords,
                                   BaseMetric metric);
  /// R^dimension; samples are drawn from the box [lo, hi]^dimension.
  static Universe real_vector(std::size_t dimension, BaseMetric metric,
                              double box_lo = 0.0, double box_hi = 1.0);
  /// {1, ..., bound}.
  static Universe naturals(std::uint64_t bound);

  UniverseKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ != UniverseKind::real_vector; }
  bool has_metric() const noexcept;
  std::size_t size() const;  // finite universes only

  bool contains(const Point& p) const;
  void require_contains(const Point& p) const;
  double distance(const Point& a, const Point& b) const;
  double diameter() const;  // finite universes with a metric

  std::vector<Point> points() const;
  Point point_at(std::size_t index) const;
  std::size_t index_of(const Point& p) const;
  Point sample(Rng& rng) const;

  std::string label(const Point& p) const;
  Point point_by_label(const std::string& label) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<double>>& distances() const noexcept { return distances_; }
  std::size_t dimension() const noexcept { return dimension_; }
  BaseMetric metric() const noexcept { return metric_; }
  std::uint64_t bound() const noexcept { return bound_; }
  double box_lo() const noexcept { return box_lo_; }
  double box_hi() const noexcept { return box_hi_; }

 private:
  UniverseKind kind_ = UniverseKind::finite_labeled;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> distances_;
  std::size_t dimension_ = 0;
  BaseMetric metric_ = BaseMetric::euclidean;
  double box_lo_ = 0.0, box_hi_ = 1.0;
  std::uint64_t bound_ = 0;
};

/// One evaluation (nearness G, neutralness B, non-nearness Y). Components are
/// finite and non-negative; they are deliberately not clamped to [0, 1].
struct DegreesTriple {
  double g = 0.0;
  double b = 0.0;
  double y = 0.0;

  friend bool operator==(const DegreesTriple&, const DegreesTriple&) = default;
};

DegreesTriple make_degrees(double g, double b, double y);

enum class Construction { standard, naturals, tabulated };

std::string to_string(Construction c);

/// Degrees per unordered pair at increasing lambda knots. Linear
/// interpolation between knots, constant extension past either end.
struct DegreeTable {
  std::vector<double> lambdas;
  // Keyed by (i, j) with i <= j in universe index order.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<DegreesTriple>> entries;
};

class NmsSpace {
 public:
  /// Degrees for (a, b) at scale lambda. lambda <= 0 yields exactly
  /// (0, 1, 1). Arguments are put in canonical order first, so the result is
  /// symmetric in a and b by construction.
  DegreesTriple evaluate(const Point& a, const Point& b, double lambda) const;

  const Universe& universe() const noexcept { return universe_; }
  Construction construction() const noexcept { return construction_; }
  const NormPair& norms() const noexcept { return norms_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const std::optional<DegreeTable>& table() const noexcept { return table_; }

  /// Same space with another norm pair.
  NmsSpace with_norms(NormPair norms) const;

 private:
  friend NmsSpace standard_from_metric(Universe, NormPair);
  friend NmsSpace naturals_example(std::uint64_t, NormPair);
  friend NmsSpace tabulated_space(Universe, NormPair, DegreeTable);

  NmsSpace(Universe universe, Construction c, NormPair norms);

  DegreesTriple evaluate_canonical(const Point& a, const Point& b, double lambda) const;

  Universe universe_;
  Construction construction_;
  NormPair norms_;
  std::optional<DegreeTable> table_;
  std::vector<std::string> notes_;
};

/// G = lambda/(lambda+d), B = d/(lambda+d), Y = d/lambda.
NmsSpace standard_from_metric(Universe universe, NormPair norms);
/// On {1..bound}: G = min/max, B = |a-b|/max, Y = |a-b|, independent of lambda.
NmsSpace naturals_example(std::uint64_t bound, NormPair norms);
NmsSpace tabulated_space(Universe universe, NormPair norms, DegreeTable table);

}  // namespace nmskit
