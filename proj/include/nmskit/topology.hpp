#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmskit/space.hpp"

namespace nmskit {

struct OpenBall {
  Point center;
  double epsilon = 0.5;
  double lambda = 1.0;

  friend bool operator==(const OpenBall&, const OpenBall&) = default;
};

/// Throws invalid_argument unless 0 < epsilon < 1 and lambda > 0 (finite).
void validate_ball(const OpenBall& ball);

/// G(center, b) > 1 - eps, B < eps, Y < eps, all strict.
bool ball_contains(const NmsSpace& space, const OpenBall& ball, const Point& b);

/// Membership with the closed inequalities; stands in for the closure of the
/// ball on sampled real universes.
bool closed_ball_contains(const NmsSpace& space, const OpenBall& ball, const Point& b);

// ---------------------------------------------------------------------------
// Open-set witness

struct InteriorBallOptions {
  std::size_t scan_budget = 32;
  std::size_t samples = 2000;  // verification sample on infinite universes
  std::uint64_t seed = 0;
};

struct InteriorBallResult {
  std::optional<OpenBall> ball;  // O(b, 1 - e4, lambda - lambda0)
  double lambda0 = 0;
  double e0 = 0, zeta = 0, e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::size_t scanned = 0;
  bool exhaustive = false;  // verification covered the whole (finite) universe
  std::size_t verified_points = 0;
  std::optional<Point> violation;  // a point of the inner ball outside the outer one
};

/// Follows the open-set proof: find lambda0 in (0, lambda) keeping b strictly
/// inside the ball, then build e1..e4 from the residual solvers.
/// Precondition: ball_contains(space, ball, b). Throws search_failure when no
/// usable lambda0 is found within the scan budget.
InteriorBallResult interior_ball_witness(const NmsSpace& space, const OpenBall& ball, const Point& b,
                                         const InteriorBallOptions& options = {});

// ---------------------------------------------------------------------------
// Hausdorff witness

struct HausdorffOptions {
  std::size_t samples = 1000;  // on infinite universes
  std::uint64_t seed = 0;
};

struct HausdorffResult {
  bool applicable = false;
  std::string reason;  // why not applicable
  DegreesTriple degrees;
  double epsilon = 0, e0 = 0, e4 = 0, e5 = 0, e6 = 0, e7 = 0;
  std::optional<OpenBall> ball_a, ball_b;
  bool exhaustive = false;
  std::size_t verified_points = 0;
  std::optional<Point> shared;  // a point found in both balls

  bool disjoint() const noexcept { return applicable && !shared; }
};

/// Throws precondition when a == b. Reports not-applicable (no throw) when the
/// degrees at lambda are not all strictly inside (0, 1).
HausdorffResult hausdorff_witness(const NmsSpace& space, const Point& a, const Point& b, double lambda,
                                  const HausdorffOptions& options = {});

// ---------------------------------------------------------------------------
// Neutrosophic boundedness

struct NbPair {
  double lambda = 0;
  double epsilon = 0;
};

/// Scans lambda ascending and, per lambda, epsilon ascending; returns the first
/// pair bounding every pair of the subset.
std::optional<NbPair> is_neutro_bounded(const NmsSpace& space, const std::vector<Point>& subset,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& epsilon_grid);

struct NbCertificate {
  double rho = 0, sigma = 0, phi = 0;
  double fold_g = 0, fold_b = 0, fold_y = 0;  // (1-e)o(1-e)o rho, e*e*sigma, e*e*phi
  std::optional<double> lambda0;
  std::optional<double> zeta;
  bool verified = false;  // certificate holds on all subset pairs at lambda0
  std::optional<std::pair<Point, Point>> violation;
};

/// Certificate from a finite cover by balls O(center, epsilon, lambda).
/// Throws precondition if some subset point is not covered. zeta is searched
/// on the grid 0.01, 0.02, ..., 0.99.
NbCertificate nb_certificate_via_cover(const NmsSpace& space, const std::vector<Point>& subset,
                                       const std::vector<Point>& centers, double epsilon, double lambda);

// ---------------------------------------------------------------------------
// Finite topologies

struct BaseBall {
  OpenBall ball;
  std::uint64_t members = 0;
};

inline constexpr std::size_t kMaxFinitePoints = 63;
inline constexpr std::size_t kMaxOpenSets = std::size_t{1} << 20;

class FiniteTopology {
 public:
  /// Topology generated by the given point sets: closed under finite
  /// intersections, then arbitrary unions. Throws capacity when the family
  /// would exceed kMaxOpenSets.
  static FiniteTopology generate(std::vector<std::string> labels, std::vector<BaseBall> base);

  std::size_t size() const noexcept { return labels_.size(); }
  std::uint64_t full() const noexcept;
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<BaseBall>& base() const noexcept { return base_; }
  /// Sorted ascending as bitmasks; contains 0 and full().
  const std::vector<std::uint64_t>& open_sets() const noexcept { return open_; }
  /// Smallest open set containing each point.
  const std::vector<std::uint64_t>& neighborhoods() const noexcept { return hood_; }

  bool is_open(std::uint64_t set) const;
  std::uint64_t closure(std::uint64_t set) const;
  std::uint64_t interior(std::uint64_t set) const;
  bool is_dense(std::uint64_t set) const { return closure(set) == full(); }
  bool is_discrete() const;
  /// Closing the family again under unions and intersections adds nothing.
  bool reclosure_fixpoint() const;

  std::vector<std::string> members(std::uint64_t set) const;

 private:
  std::vector<std::string> labels_;
  std::vector<BaseBall> base_;
  std::vector<std::uint64_t> open_;
  std::vector<std::uint64_t> hood_;
};

/// Point set of a ball in a finite universe, by universe index.
std::uint64_t ball_members(const NmsSpace& space, const OpenBall& ball);

/// Base = every ball O(a, e, l) for a in the universe, e in epsilon_grid, l in
/// lambda_grid. Throws precondition for infinite universes, capacity for more
/// than kMaxFinitePoints points.
FiniteTopology generate_finite_topology(const NmsSpace& space, const std::vector<double>& epsilon_grid,
                                        const std::vector<double>& lambda_grid);

/// Radius at which every ball at this lambda is a singleton: half the least
/// max(1-G, B, Y) over distinct pairs, capped below 1. Empty when some pair
/// of distinct points is not separated at lambda.
std::optional<double> separating_radius(const NmsSpace& space, double lambda);

struct NowhereDenseResult {
  bool lattice = false;         // interior(closure(S)) is empty
  bool ball_criterion = false;  // every nonempty open set holds a base ball with closure missing S
  bool agree() const noexcept { return lattice == ball_criterion; }
  std::uint64_t closure = 0, interior_of_closure = 0;
  std::optional<std::uint64_t> blocking_open_set;  // open set with no qualifying ball
};

NowhereDenseResult is_nowhere_dense(const FiniteTopology& top, std::uint64_t subset);

struct BaireResult {
  bool dense = false;  // intersection of all dense open sets is dense
  std::size_t dense_open_count = 0;
  std::uint64_t intersection = 0;
};

BaireResult baire_probe(const FiniteTopology& top);

struct BasePrefix {
  std::vector<OpenBall> balls;
  bool clamped = false;  // radius 1/m at m = 1 moved inside (0, 1)
  std::optional<bool> base_property;  // finite universes only
  std::vector<std::string> uncovered;  // points whose neighborhood no member fits
};

inline constexpr double kClampedRadius = 1.0 - 1e-9;

/// O(a_k, 1/m, 1/m) for every dense point and m = 1..depth. On finite
/// universes the base property is checked against the topology generated by
/// a fine reference grid.
BasePrefix countable_base_prefix(const NmsSpace& space, const std::vector<Point>& dense_points,
                                 std::size_t depth);

// ---------------------------------------------------------------------------
// Closure lemma

struct ClosureCheckResult {
  bool holds = false;
  bool exact = false;  // finite universe, exact closure
  std::size_t checked = 0;
  std::optional<Point> witness;  // closure point outside O(a, e1, lambda)
  std::string regime;
};

/// Throws precondition unless (1-e2)o(1-e2) >= 1-e1 and e2*e2 <= e1 under the
/// space's norms. Checks closure(O(a, e2, lambda/2)) within O(a, e1, lambda).
ClosureCheckResult closure_containment_check(const NmsSpace& space, const Point& a, double e1,
                                             double e2, double lambda, std::size_t samples,
                                             std::uint64_t seed = 0);

}  // namespace nmskit
