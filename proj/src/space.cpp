#include "nmskit/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

constexpr double kMetricTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

std::string describe(const Point& p) {
  std::ostringstream out;
  out.precision(12);
  out << '(';
  for (std::size_t i = 0; i < p.coords.size(); ++i) out << (i ? ", " : "") << p.coords[i];
  out << ')';
  return out.str();
}

double vector_distance(const std::vector<double>& a, const std::vector<double>& b, BaseMetric m) {
  double acc = 0.0;
  switch (m) {
    case BaseMetric::euclidean:
      for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(acc);
    case BaseMetric::manhattan:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
    case BaseMetric::discrete:
      return a == b ? 0.0 : 1.0;
  }
  return acc;
}

bool is_index(double x, std::size_t limit) {
  return x >= 0.0 && x < static_cast<double>(limit) && std::floor(x) == x;
}

void validate_labels(const std::vector<std::string>& labels) {
  require(!labels.empty(), ErrorCode::invalid_argument, "finite universe needs at least one label");
  std::set<std::string> seen;
  for (const auto& l : labels)
    require(seen.insert(l).second, ErrorCode::invalid_argument, "duplicate label '" + l + "'");
}

}  // namespace

std::string to_string(UniverseKind kind) {
  switch (kind) {
    case UniverseKind::finite_labeled: return "finite_labeled";
    case UniverseKind::real_vector: return "real_vector";
    case UniverseKind::naturals: return "naturals";
  }
  return "?";
}

std::string to_string(BaseMetric metric) {
  switch (metric) {
    case BaseMetric::euclidean: return "euclidean";
    case BaseMetric::manhattan: return "manhattan";
    case BaseMetric::discrete: return "discrete";
  }
  return "?";
}

BaseMetric parse_metric(const std::string& name) {
  if (name == "euclidean") return BaseMetric::euclidean;
  if (name == "manhattan") return BaseMetric::manhattan;
  if (name == "discrete") return BaseMetric::discrete;
  fail(ErrorCode::config, "unknown base metric '" + name + "'");
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::standard: return "standard";
    case Construction::naturals: return "naturals";
    case Construction::tabulated: return "tabulated";
  }
  return "?";
}

Universe Universe::finite(std::vector<std::string> labels,
                          std::vector<std::vector<double>> distances) {
  validate_labels(labels);
  const std::size_t n = labels.size();
  require(distances.size() == n, ErrorCode::invalid_argument,
          "distance matrix has " + std::to_string(distances.size()) + " rows for " +
              std::to_string(n) + " labels");
  for (const auto& row : distances)
    require(row.size() == n, ErrorCode::invalid_argument, "distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    require(distances[i][i] == 0.0, ErrorCode::invalid_argument,
            "distance matrix diagonal must be zero at '" + labels[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances[i][j];
      require(std::isfinite(d) && d >= 0.0, ErrorCode::invalid_argument,
              "distance matrix entry (" + labels[i] + ", " + labels[j] + ") must be finite and >= 0");
      require(i == j || d > 0.0, ErrorCode::invalid_argument,
              "distinct points '" + labels[i] + "', '" + labels[j] + "' at distance zero");
      require(std::abs(d - distances[j][i]) <= kMetricTol, ErrorCode::invalid_argument,
              "distance matrix is not symmetric at (" + labels[i] + ", " + labels[j] + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        require(distances[i][k] <= distances[i][j] + distances[j][k] + kMetricTol,
                ErrorCode::invalid_argument,
                "triangle inequality fails for (" + labels[i] + ", " + labels[j] + ", " +
                    labels[k] + ")");
  Universe u;
  u.kind_ = UniverseKind::finite_labeled;
  u.labels_ = std::move(labels);
  u.distances_ = std::move(distances);
  return u;
}

Universe Universe::finite_labels(std::vector<std::string> labels) {
  validate_labels(labels);
  Universe u;
  u.kind_ = UniverseKind::finite_labeled;
  u.labels_ = std::move(labels);
  return u;
}

Universe Universe::from_coordinates(std::vector<std::string> labels,
                                    const std::vector<std::vector<double>>& coords,
                                    BaseMetric metric) {
  require(labels.size() == coords.size(), ErrorCode::invalid_argument,
          "need one coordinate vector per label");
  const std::size_t n = coords.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    require(coords[i].size() == coords[0].size(), ErrorCode::invalid_argument,
            "coordinate vectors must share a dimension");
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i] = vector_distance(coords[i], coords[j], metric);
  }
  return finite(std::move(labels), std::move(d));
}

Universe Universe::real_vector(std::size_t dimension, BaseMetric metric, double box_lo,
                               double box_hi) {
  require(dimension >= 1, ErrorCode::invalid_argument, "real_vector dimension must be >= 1");
  require(std::isfinite(box_lo) && std::isfinite(box_hi) && box_lo < box_hi,
          ErrorCode::invalid_argument, "sampling box must satisfy lo < hi");
  Universe u;
  u.kind_ = UniverseKind::real_vector;
  u.dimension_ = dimension;
  u.metric_ = metric;
  u.box_lo_ = box_lo;
  u.box_hi_ = box_hi;
  return u;
}

Universe Universe::naturals(std::uint64_t bound) {
  require(bound >= 1, ErrorCode::invalid_argument, "naturals bound must be >= 1");
  require(bound <= (std::uint64_t{1} << 52), ErrorCode::invalid_argument,
          "naturals bound must be exactly representable");
  Universe u;
  u.kind_ = UniverseKind::naturals;
  u.bound_ = bound;
  return u;
}

bool Universe::has_metric() const noexcept {
  switch (kind_) {
    case UniverseKind::finite_labeled: return !distances_.empty();
    case UniverseKind::real_vector: return true;
    case UniverseKind::naturals: return false;
  }
  return false;
}

std::size_t Universe::size() const {
  switch (kind_) {
    case UniverseKind::finite_labeled: return labels_.size();
    case UniverseKind::naturals: return static_cast<std::size_t>(bound_);
    case UniverseKind::real_vector: break;
  }
  fail(ErrorCode::domain, "real_vector universe has no finite size");
}

bool Universe::contains(const Point& p) const {
  switch (kind_) {
    case UniverseKind::finite_labeled:
      return p.coords.size() == 1 && is_index(p.coords[0], labels_.size());
    case UniverseKind::naturals:
      return p.coords.size() == 1 && p.coords[0] >= 1.0 &&
             p.coords[0] <= static_cast<double>(bound_) && std::floor(p.coords[0]) == p.coords[0];
    case UniverseKind::real_vector:
      return p.coords.size() == dimension_ &&
             std::all_of(p.coords.begin(), p.coords.end(), [](double x) { return std::isfinite(x); });
  }
  return false;
}

void Universe::require_contains(const Point& p) const {
  require(contains(p), ErrorCode::domain,
          "point " + describe(p) + " is outside the " + to_string(kind_) + " universe");
}

double Universe::distance(const Point& a, const Point& b) const {
  require(has_metric(), ErrorCode::domain, "universe has no metric attached");
  require_contains(a);
  require_contains(b);
  if (kind_ == UniverseKind::finite_labeled)
    return distances_[static_cast<std::size_t>(a.coords[0])][static_cast<std::size_t>(b.coords[0])];
  return vector_distance(a.coords, b.coords, metric_);
}

double Universe::diameter() const {
  double best = 0.0;
  const auto pts = points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, distance(pts[i], pts[j]));
  return best;
}

std::vector<Point> Universe::points() const {
  const std::size_t n = size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(point_at(i));
  return out;
}

Point Universe::point_at(std::size_t index) const {
  require(index < size(), ErrorCode::domain, "point index " + std::to_string(index) + " out of range");
  if (kind_ == UniverseKind::naturals) return Point{{static_cast<double>(index + 1)}};
  return Point{{static_cast<double>(index)}};
}

std::size_t Universe::index_of(const Point& p) const {
  require(is_finite(), ErrorCode::domain, "index_of needs a finite universe");
  require_contains(p);
  const auto v = static_cast<std::size_t>(p.coords[0]);
  return kind_ == UniverseKind::naturals ? v - 1 : v;
}

Point Universe::sample(Rng& rng) const {
  if (is_finite()) return point_at(rng.below(size()));
  Point p;
  p.coords.resize(dimension_);
  for (auto& c : p.coords) c = rng.uniform(box_lo_, box_hi_);
  return p;
}

std::string Universe::label(const Point& p) const {
  require_contains(p);
  switch (kind_) {
    case UniverseKind::finite_labeled: return labels_[static_cast<std::size_t>(p.coords[0])];
    case UniverseKind::naturals: return std::to_string(static_cast<std::uint64_t>(p.coords[0]));
    case UniverseKind::real_vector: return describe(p);
  }
  return describe(p);
}

Point Universe::point_by_label(const std::string& label) const {
  require(kind_ == UniverseKind::finite_labeled, ErrorCode::domain,
          "labels exist only in finite_labeled universes");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return Point{{static_cast<double>(i)}};
  fail(ErrorCode::domain, "unknown label '" + label + "'");
}

DegreesTriple make_degrees(double g, double b, double y) {
  for (double x : {g, b, y})
    require(std::isfinite(x) && x >= 0.0, ErrorCode::domain,
            "degree components must be finite and non-negative, got " + fmt(x));
  return {g, b, y};
}

NmsSpace::NmsSpace(Universe universe, Construction c, NormPair norms)
    : universe_(std::move(universe)), construction_(c), norms_(std::move(norms)) {}

NmsSpace NmsSpace::with_norms(NormPair norms) const {
  NmsSpace copy = *this;
  copy.norms_ = std::move(norms);
  return copy;
}

DegreesTriple NmsSpace::evaluate(const Point& a, const Point& b, double lambda) const {
  universe_.require_contains(a);
  universe_.require_contains(b);
  require(std::isfinite(lambda), ErrorCode::domain, "lambda must be finite");
  if (lambda <= 0.0) return {0.0, 1.0, 1.0};
  return b < a ? evaluate_canonical(b, a, lambda) : evaluate_canonical(a, b, lambda);
}

DegreesTriple NmsSpace::evaluate_canonical(const Point& a, const Point& b, double lambda) const {
  switch (construction_) {
    case Construction::standard: {
      const double d = universe_.distance(a, b);
      // G is taken as 1 - B so that G + B == 1 holds exactly in floating point.
      const double bb = d / (lambda + d);
      return {1.0 - bb, bb, d / lambda};
    }
    case Construction::naturals: {
      const double lo = a.coords[0], hi = b.coords[0];
      return {lo / hi, (hi - lo) / hi, hi - lo};
    }
    case Construction::tabulated: {
      const std::size_t i = universe_.index_of(a), j = universe_.index_of(b);
      const auto& t = *table_;
      const auto it = t.entries.find({i, j});
      if (it == t.entries.end()) return {1.0, 0.0, 0.0};  // diagonal default
      const auto& row = it->second;
      const auto& ks = t.lambdas;
      if (lambda <= ks.front()) return row.front();
      if (lambda >= ks.back()) return row.back();
      const auto hi = static_cast<std::size_t>(std::upper_bound(ks.begin(), ks.end(), lambda) - ks.begin());
      const std::size_t lo = hi - 1;
      const double w = (lambda - ks[lo]) / (ks[hi] - ks[lo]);
      auto lerp = [w](double x, double y) { return x + w * (y - x); };
      return {lerp(row[lo].g, row[hi].g), lerp(row[lo].b, row[hi].b), lerp(row[lo].y, row[hi].y)};
    }
  }
  return {};
}

NmsSpace standard_from_metric(Universe universe, NormPair norms) {
  require(universe.kind() != UniverseKind::naturals, ErrorCode::precondition,
          "standard construction needs a metric; the naturals universe carries none");
  require(universe.has_metric(), ErrorCode::precondition,
          "standard construction needs a distance matrix on the finite universe");
  return NmsSpace(std::move(universe), Construction::standard, std::move(norms));
}

NmsSpace naturals_example(std::uint64_t bound, NormPair norms) {
  require(bound >= 2, ErrorCode::invalid_argument, "naturals example needs bound >= 2");
  NmsSpace s(Universe::naturals(bound), Construction::naturals, std::move(norms));
  s.notes_.push_back(
      "B as printed reads (b-a)/y for ax <= b and (a-b)/x for b <= a with x, y undefined; "
      "evaluated as (b-a)/b for a <= b and (a-b)/a for b <= a, i.e. B = 1 - G");
  return s;
}

NmsSpace tabulated_space(Universe universe, NormPair norms, DegreeTable table) {
  require(universe.kind() == UniverseKind::finite_labeled, ErrorCode::precondition,
          "tabulated construction needs a finite_labeled universe");
  require(!table.lambdas.empty(), ErrorCode::invalid_argument, "table needs at least one lambda knot");
  for (std::size_t k = 0; k < table.lambdas.size(); ++k) {
    require(std::isfinite(table.lambdas[k]) && table.lambdas[k] > 0.0, ErrorCode::invalid_argument,
            "table lambda knots must be positive");
    require(k == 0 || table.lambdas[k] > table.lambdas[k - 1], ErrorCode::invalid_argument,
            "table lambda knots must be strictly increasing");
  }
  const std::size_t n = universe.size();
  for (const auto& [key, row] : table.entries) {
    require(key.first <= key.second && key.second < n, ErrorCode::invalid_argument,
            "table entry keys must be canonical index pairs");
    require(row.size() == table.lambdas.size(), ErrorCode::invalid_argument,
            "table entry has " + std::to_string(row.size()) + " triples for " +
                std::to_string(table.lambdas.size()) + " knots");
    for (const auto& t : row) make_degrees(t.g, t.b, t.y);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(table.entries.count({i, j}) == 1, ErrorCode::invalid_argument,
              "table lacks the pair (" + universe.labels()[i] + ", " + universe.labels()[j] + ")");
  NmsSpace s(std::move(universe), Construction::tabulated, std::move(norms));
  s.table_ = std::move(table);
  s.notes_.push_back("tabulated degrees: linear in lambda between knots, constant past the ends; "
                     "limit axioms are probe-limited");
  return s;
}

}  // namespace nmskit
