#include "nmskit/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

bool open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::invalid_argument,
          "lambda must be positive and finite");
}

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

// Largest t such that center + t*e0 stays inside the ball (e0 the first axis).
// Balls of the built-in constructions are star-shaped about their center.
double radial_extent(const NmsSpace& space, const OpenBall& ball, bool closed) {
  auto inside = [&](double t) {
    Point p = ball.center;
    p.coords[0] += t;
    return closed ? closed_ball_contains(space, ball, p) : ball_contains(space, ball, p);
  };
  double hi = 1.0;
  while (inside(hi) && hi < 1e9) hi *= 2.0;
  if (hi >= 1e9) return hi;
  double lo = 0.0;
  for (int i = 0; i < 100 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return hi;
}

// Half the probes in a box of half-width 2*extent around center, half from the
// universe's sampling box.
std::vector<Point> probe_points(const Universe& u, const Point& center, double extent, std::size_t count,
                                Rng& rng) {
  const double w = 2.0 * std::max(extent, 1e-9);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (k % 2 == 0) {
      Point p = center;
      for (auto& c : p.coords) c += rng.uniform(-w, w);
      pts.push_back(std::move(p));
    } else {
      pts.push_back(u.sample(rng));
    }
  }
  return pts;
}

std::vector<std::uint64_t> neighborhoods_from(std::size_t n, const std::vector<std::uint64_t>& sets) {
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : bit(n) - 1;
  std::vector<std::uint64_t> hood(n, full);
  for (std::uint64_t s : sets)
    for (std::size_t i = 0; i < n; ++i)
      if (s & bit(i)) hood[i] &= s;
  return hood;
}

std::vector<double> reference_epsilons() {
  std::vector<double> e;
  for (int k = 1; k <= 19; ++k) e.push_back(0.05 * k);
  return e;
}

std::vector<double> reference_lambdas(std::vector<double> extra) {
  for (int k = -3; k <= 3; ++k) extra.push_back(std::pow(10.0, k));
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  return extra;
}

// Minimal open neighborhoods in the topology generated by balls on a fine
// reference grid, with the separating radius added at each scale so isolated
// points are seen as isolated.
std::vector<std::uint64_t> reference_neighborhoods(const NmsSpace& space, std::vector<OpenBall> extra,
                                                   const std::vector<double>& extra_lambdas) {
  const Universe& u = space.universe();
  const auto pts = u.points();
  std::vector<std::uint64_t> sets;
  for (const auto& b : extra) sets.push_back(ball_members(space, b));
  for (double l : reference_lambdas(extra_lambdas)) {
    auto eps = reference_epsilons();
    if (auto r = separating_radius(space, l)) eps.push_back(*r);
    for (const auto& p : pts)
      for (double e : eps) sets.push_back(ball_members(space, OpenBall{p, e, l}));
  }
  return neighborhoods_from(pts.size(), sets);
}

void require_small_finite(const Universe& u) {
  require(u.is_finite(), ErrorCode::precondition, "finite topologies need a finite universe");
  require(u.size() <= kMaxFinitePoints, ErrorCode::capacity,
          "finite topologies support at most 63 points, universe has " + std::to_string(u.size()));
}

}  // namespace

void validate_ball(const OpenBall& ball) {
  require(open_unit(ball.epsilon), ErrorCode::invalid_argument, "ball radius must lie in (0, 1)");
  require_lambda(ball.lambda);
}

bool ball_contains(const NmsSpace& space, const OpenBall& ball, const Point& b) {
  validate_ball(ball);
  const DegreesTriple d = space.evaluate(ball.center, b, ball.lambda);
  return d.g > 1.0 - ball.epsilon && d.b < ball.epsilon && d.y < ball.epsilon;
}

bool closed_ball_contains(const NmsSpace& space, const OpenBall& ball, const Point& b) {
  validate_ball(ball);
  const DegreesTriple d = space.evaluate(ball.center, b, ball.lambda);
  return d.g >= 1.0 - ball.epsilon && d.b <= ball.epsilon && d.y <= ball.epsilon;
}

InteriorBallResult interior_ball_witness(const NmsSpace& space, const OpenBall& ball, const Point& b,
                                         const InteriorBallOptions& options) {
  validate_ball(ball);
  require(ball_contains(space, ball, b), ErrorCode::precondition, "point is not inside the ball");
  const NormKernel& tn = space.norms().tnorm();
  const NormKernel& tc = space.norms().tconorm();
  const double eps = ball.epsilon, lambda = ball.lambda;

  InteriorBallResult r;
  for (std::size_t k = 0; k < options.scan_budget && !r.ball; ++k) {
    // lambda/2, then alternately toward lambda and toward 0
    double l0 = 0.5 * lambda;
    if (k > 0) {
      const int j = static_cast<int>((k + 1) / 2) + 1;
      l0 = k % 2 ? lambda * (1.0 - std::ldexp(1.0, -j)) : lambda * std::ldexp(1.0, -j);
    }
    ++r.scanned;
    if (!(l0 > 0.0 && l0 < lambda)) continue;
    const DegreesTriple d = space.evaluate(ball.center, b, l0);
    if (!(d.g > 1.0 - eps && d.b < eps && d.y < eps)) continue;
    // e0 bounds all three degrees: G >= e0, B <= 1 - e0, Y <= 1 - e0.
    const double e0 = std::min({d.g, 1.0 - d.b, 1.0 - d.y, 1.0 - kResidualResolution});
    const double zeta = 1.0 - 0.5 * (e0 + 1.0 - eps);
    try {
      const double e1 = tnorm_residual(tn, UnitValue(e0), UnitValue(0.5 * (e0 + 1.0 - zeta)));
      const double x = tconorm_residual(tc, UnitValue(zeta), UnitValue(1.0 - e0));
      const double e2 = 1.0 - x;
      const double e4 = std::max(e1, e2);
      if (!open_unit(1.0 - e4) || !(lambda - l0 > 0.0)) continue;
      r.lambda0 = l0;
      r.e0 = e0;
      r.zeta = zeta;
      r.e1 = e1;
      r.e2 = r.e3 = e2;
      r.e4 = e4;
      r.ball = OpenBall{b, 1.0 - e4, lambda - l0};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_solution && e.code() != ErrorCode::invalid_argument) throw;
    }
  }
  if (!r.ball)
    fail(ErrorCode::search_failure,
         "no lambda0 in (0, lambda) kept the point inside the ball within " +
             std::to_string(options.scan_budget) + " scale probes");

  const Universe& u = space.universe();
  auto check = [&](const Point& c) {
    if (!ball_contains(space, *r.ball, c)) return true;
    ++r.verified_points;
    if (ball_contains(space, ball, c)) return true;
    r.violation = c;
    return false;
  };
  if (u.is_finite()) {
    r.exhaustive = true;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!check(u.point_at(i))) break;
  } else {
    Rng rng(options.seed);
    const double extent = radial_extent(space, *r.ball, false);
    for (const auto& c : probe_points(u, b, extent, options.samples, rng))
      if (!check(c)) break;
  }
  return r;
}

HausdorffResult hausdorff_witness(const NmsSpace& space, const Point& a, const Point& b, double lambda,
                                  const HausdorffOptions& options) {
  require_lambda(lambda);
  const Universe& u = space.universe();
  u.require_contains(a);
  u.require_contains(b);
  require(!(a == b), ErrorCode::precondition, "Hausdorff witness needs two distinct points");

  HausdorffResult r;
  r.degrees = space.evaluate(a, b, lambda);
  const DegreesTriple& d = r.degrees;
  if (!(open_unit(d.g) && open_unit(d.b) && open_unit(d.y))) {
    r.reason = "degrees (" + std::to_string(d.g) + ", " + std::to_string(d.b) + ", " +
               std::to_string(d.y) + ") at this lambda are not all inside (0, 1)";
    return r;
  }
  r.applicable = true;
  r.epsilon = std::max({d.g, 1.0 - d.b, 1.0 - d.y});
  r.e0 = 0.5 * (r.epsilon + 1.0);
  r.e4 = tnorm_diagonal_root(space.norms().tnorm(), r.e0);
  r.e5 = 1.0 - tconorm_diagonal_root(space.norms().tconorm(), 1.0 - r.e0);
  r.e6 = r.e5;
  r.e7 = std::max({r.e4, r.e5, r.e6});
  r.ball_a = OpenBall{a, 1.0 - r.e7, 0.5 * lambda};
  r.ball_b = OpenBall{b, 1.0 - r.e7, 0.5 * lambda};

  auto check = [&](const Point& c) {
    ++r.verified_points;
    if (ball_contains(space, *r.ball_a, c) && ball_contains(space, *r.ball_b, c)) {
      r.shared = c;
      return false;
    }
    return true;
  };
  if (u.is_finite()) {
    r.exhaustive = true;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!check(u.point_at(i))) break;
    return r;
  }
  // half the sample on the line through a and b, half in a box around them
  const std::size_t on_line = options.samples / 2;
  for (std::size_t k = 0; k < on_line; ++k) {
    const double t = on_line > 1 ? -1.0 + 3.0 * static_cast<double>(k) / static_cast<double>(on_line - 1) : 0.5;
    Point c = a;
    for (std::size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += t * (b.coords[i] - a.coords[i]);
    if (!check(c)) return r;
  }
  Rng rng(options.seed);
  double span = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) span = std::max(span, std::abs(b.coords[i] - a.coords[i]));
  for (std::size_t k = on_line; k < options.samples; ++k) {
    Point c = a;
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
      const double lo = std::min(a.coords[i], b.coords[i]) - span;
      const double hi = std::max(a.coords[i], b.coords[i]) + span;
      c.coords[i] = rng.uniform(lo, hi);
    }
    if (!check(c)) return r;
  }
  return r;
}

std::optional<NbPair> is_neutro_bounded(const NmsSpace& space, const std::vector<Point>& subset,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& epsilon_grid) {
  require(!subset.empty(), ErrorCode::invalid_argument, "subset must be non-empty");
  for (const auto& p : subset) space.universe().require_contains(p);
  auto lambdas = lambda_grid;
  auto epsilons = epsilon_grid;
  std::sort(lambdas.begin(), lambdas.end());
  std::sort(epsilons.begin(), epsilons.end());
  for (double e : epsilons) require(open_unit(e), ErrorCode::invalid_argument, "epsilon grid must lie in (0, 1)");
  for (double l : lambdas) {
    require_lambda(l);
    double min_g = 1.0, max_b = 0.0, max_y = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        const DegreesTriple d = space.evaluate(subset[i], subset[j], l);
        min_g = std::min(min_g, d.g);
        max_b = std::max(max_b, d.b);
        max_y = std::max(max_y, d.y);
      }
    for (double e : epsilons)
      if (min_g > 1.0 - e && max_b < e && max_y < e) return NbPair{l, e};
  }
  return std::nullopt;
}

NbCertificate nb_certificate_via_cover(const NmsSpace& space, const std::vector<Point>& subset,
                                       const std::vector<Point>& centers, double epsilon, double lambda) {
  require(!subset.empty() && !centers.empty(), ErrorCode::invalid_argument,
          "subset and centers must be non-empty");
  require(open_unit(epsilon), ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
  require_lambda(lambda);
  for (const auto& p : subset) {
    const bool covered = std::any_of(centers.begin(), centers.end(), [&](const Point& c) {
      return ball_contains(space, OpenBall{c, epsilon, lambda}, p);
    });
    require(covered, ErrorCode::precondition,
            "point " + space.universe().label(p) + " is not covered by any center ball");
  }
  NbCertificate cert;
  cert.rho = 1.0;
  for (const auto& p : centers)
    for (const auto& q : centers) {
      const DegreesTriple d = space.evaluate(p, q, lambda);
      cert.rho = std::min(cert.rho, d.g);
      cert.sigma = std::max(cert.sigma, d.b);
      cert.phi = std::max(cert.phi, d.y);
    }
  const NormKernel& tn = space.norms().tnorm();
  const NormKernel& tc = space.norms().tconorm();
  cert.fold_g = tn.raw(tn.raw(1.0 - epsilon, 1.0 - epsilon), cert.rho);
  cert.fold_b = tc.raw(tc.raw(epsilon, epsilon), cert.sigma);
  cert.fold_y = tc.raw(tc.raw(epsilon, epsilon), cert.phi);
  for (int k = 1; k <= 99; ++k) {
    const double z = k / 100.0;
    if (cert.fold_g > 1.0 - z && cert.fold_b < z && cert.fold_y < z) {
      cert.zeta = z;
      break;
    }
  }
  if (!cert.zeta) return cert;
  cert.lambda0 = 3.0 * lambda;
  cert.verified = true;
  for (std::size_t i = 0; i < subset.size() && cert.verified; ++i)
    for (std::size_t j = i; j < subset.size(); ++j) {
      const DegreesTriple d = space.evaluate(subset[i], subset[j], *cert.lambda0);
      if (!(d.g > 1.0 - *cert.zeta && d.b < *cert.zeta && d.y < *cert.zeta)) {
        cert.verified = false;
        cert.violation = std::make_pair(subset[i], subset[j]);
        break;
      }
    }
  return cert;
}

// ---------------------------------------------------------------------------

FiniteTopology FiniteTopology::generate(std::vector<std::string> labels, std::vector<BaseBall> base) {
  require(labels.size() <= kMaxFinitePoints, ErrorCode::capacity,
          "finite topologies support at most 63 points");
  FiniteTopology t;
  t.labels_ = std::move(labels);
  t.base_ = std::move(base);
  const std::size_t n = t.labels_.size();
  std::vector<std::uint64_t> sets;
  sets.reserve(t.base_.size());
  for (const auto& b : t.base_) {
    require((b.members & ~t.full()) == 0, ErrorCode::invalid_argument, "base set outside the universe");
    sets.push_back(b.members);
  }
  // Every finite intersection of base sets is a union of these minimal
  // neighborhoods, so the unions of neighborhoods are the whole topology.
  t.hood_ = neighborhoods_from(n, sets);

  std::vector<std::uint64_t> hoods = t.hood_;
  std::sort(hoods.begin(), hoods.end());
  hoods.erase(std::unique(hoods.begin(), hoods.end()), hoods.end());
  std::unordered_set<std::uint64_t> seen{0, t.full()};
  std::vector<std::uint64_t> family{0};
  if (t.full() != 0) family.push_back(t.full());
  for (std::uint64_t h : hoods) {
    const std::size_t count = family.size();
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = family[i] | h;
      if (seen.insert(s).second) {
        family.push_back(s);
        require(family.size() <= kMaxOpenSets, ErrorCode::capacity,
                "topology has more than 2^20 open sets");
      }
    }
  }
  std::sort(family.begin(), family.end());
  t.open_ = std::move(family);
  return t;
}

std::uint64_t FiniteTopology::full() const noexcept {
  return labels_.empty() ? 0 : (~std::uint64_t{0} >> (64 - labels_.size()));
}

bool FiniteTopology::is_open(std::uint64_t set) const {
  return std::binary_search(open_.begin(), open_.end(), set);
}

std::uint64_t FiniteTopology::closure(std::uint64_t set) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < hood_.size(); ++i)
    if (hood_[i] & set) out |= bit(i);
  return out;
}

std::uint64_t FiniteTopology::interior(std::uint64_t set) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < hood_.size(); ++i)
    if ((hood_[i] & ~set) == 0) out |= bit(i);
  return out;
}

bool FiniteTopology::is_discrete() const {
  for (std::size_t i = 0; i < hood_.size(); ++i)
    if (hood_[i] != bit(i)) return false;
  return true;
}

bool FiniteTopology::reclosure_fixpoint() const {
  if (!is_open(0) || !is_open(full())) return false;
  if (open_.size() <= 2048) {
    for (std::size_t i = 0; i < open_.size(); ++i)
      for (std::size_t j = i + 1; j < open_.size(); ++j)
        if (!is_open(open_[i] | open_[j]) || !is_open(open_[i] & open_[j])) return false;
    return true;
  }
  return std::all_of(open_.begin(), open_.end(), [&](std::uint64_t s) { return interior(s) == s; });
}

std::vector<std::string> FiniteTopology::members(std::uint64_t set) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (set & bit(i)) out.push_back(labels_[i]);
  return out;
}

std::uint64_t ball_members(const NmsSpace& space, const OpenBall& ball) {
  const Universe& u = space.universe();
  require_small_finite(u);
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (ball_contains(space, ball, u.point_at(i))) m |= bit(i);
  return m;
}

FiniteTopology generate_finite_topology(const NmsSpace& space, const std::vector<double>& epsilon_grid,
                                        const std::vector<double>& lambda_grid) {
  const Universe& u = space.universe();
  require_small_finite(u);
  require(!epsilon_grid.empty() && !lambda_grid.empty(), ErrorCode::invalid_argument,
          "epsilon and lambda grids must be non-empty");
  std::vector<std::string> labels;
  const auto pts = u.points();
  for (const auto& p : pts) labels.push_back(u.label(p));
  std::vector<BaseBall> base;
  for (const auto& p : pts)
    for (double e : epsilon_grid)
      for (double l : lambda_grid) {
        OpenBall ball{p, e, l};
        const std::uint64_t m = ball_members(space, ball);
        base.push_back(BaseBall{std::move(ball), m});
      }
  return FiniteTopology::generate(std::move(labels), std::move(base));
}

std::optional<double> separating_radius(const NmsSpace& space, double lambda) {
  require_lambda(lambda);
  const Universe& u = space.universe();
  require(u.is_finite(), ErrorCode::precondition, "separating radius needs a finite universe");
  const auto pts = u.points();
  double least = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const DegreesTriple d = space.evaluate(pts[i], pts[j], lambda);
      least = std::min(least, std::max({1.0 - d.g, d.b, d.y}));
    }
  if (!(least > 0.0)) return std::nullopt;
  return std::min(0.5 * least, 0.5);
}

NowhereDenseResult is_nowhere_dense(const FiniteTopology& top, std::uint64_t subset) {
  require((subset & ~top.full()) == 0, ErrorCode::invalid_argument, "subset outside the universe");
  NowhereDenseResult r;
  r.closure = top.closure(subset);
  r.interior_of_closure = top.interior(r.closure);
  r.lattice = r.interior_of_closure == 0;
  // Every nonempty open set contains some minimal neighborhood, so checking
  // the neighborhoods decides the criterion for all open sets.
  r.ball_criterion = true;
  for (std::uint64_t h : top.neighborhoods()) {
    const bool found = std::any_of(top.base().begin(), top.base().end(), [&](const BaseBall& b) {
      return b.members != 0 && (b.members & ~h) == 0 && (top.closure(b.members) & subset) == 0;
    });
    if (!found) {
      r.ball_criterion = false;
      r.blocking_open_set = h;
      break;
    }
  }
  return r;
}

BaireResult baire_probe(const FiniteTopology& top) {
  BaireResult r;
  r.intersection = top.full();
  for (std::uint64_t s : top.open_sets())
    if (top.is_dense(s)) {
      ++r.dense_open_count;
      r.intersection &= s;
    }
  r.dense = top.is_dense(r.intersection);
  return r;
}

BasePrefix countable_base_prefix(const NmsSpace& space, const std::vector<Point>& dense_points,
                                 std::size_t depth) {
  require(depth >= 1, ErrorCode::invalid_argument, "depth must be >= 1");
  require(!dense_points.empty(), ErrorCode::invalid_argument, "dense point list must be non-empty");
  const Universe& u = space.universe();
  for (const auto& p : dense_points) u.require_contains(p);
  BasePrefix out;
  std::vector<double> lambdas;
  for (const auto& p : dense_points)
    for (std::size_t m = 1; m <= depth; ++m) {
      double radius = 1.0 / static_cast<double>(m);
      if (radius >= 1.0) {
        radius = kClampedRadius;
        out.clamped = true;
      }
      out.balls.push_back(OpenBall{p, radius, 1.0 / static_cast<double>(m)});
    }
  if (!u.is_finite()) return out;
  require_small_finite(u);

  for (std::size_t m = 1; m <= depth; ++m) lambdas.push_back(1.0 / static_cast<double>(m));
  const auto hood = reference_neighborhoods(space, out.balls, lambdas);
  std::vector<std::uint64_t> members;
  for (const auto& b : out.balls) members.push_back(ball_members(space, b));
  bool ok = true;
  for (std::size_t i = 0; i < hood.size(); ++i) {
    const bool fits = std::any_of(members.begin(), members.end(), [&](std::uint64_t m) {
      return (m & bit(i)) && (m & ~hood[i]) == 0;
    });
    if (!fits) {
      ok = false;
      out.uncovered.push_back(u.label(u.point_at(i)));
    }
  }
  out.base_property = ok;
  return out;
}

ClosureCheckResult closure_containment_check(const NmsSpace& space, const Point& a, double e1, double e2,
                                             double lambda, std::size_t samples, std::uint64_t seed) {
  require(open_unit(e1) && open_unit(e2), ErrorCode::invalid_argument, "radii must lie in (0, 1)");
  require_lambda(lambda);
  const Universe& u = space.universe();
  u.require_contains(a);
  const NormKernel& tn = space.norms().tnorm();
  const NormKernel& tc = space.norms().tconorm();
  require(tn.raw(1.0 - e2, 1.0 - e2) >= 1.0 - e1 && tc.raw(e2, e2) <= e1, ErrorCode::precondition,
          "hypotheses not satisfied: need (1-e2)o(1-e2) >= 1-e1 and e2*e2 <= e1 under " + tn.name() + "/" +
              tc.name());

  const OpenBall inner{a, e2, 0.5 * lambda};
  const OpenBall outer{a, e1, lambda};
  ClosureCheckResult r;
  if (u.is_finite()) {
    require_small_finite(u);
    r.exact = true;
    r.regime = "finite: closure in the ball topology";
    const auto hood = reference_neighborhoods(space, {inner, outer}, {inner.lambda, outer.lambda});
    const std::uint64_t in = ball_members(space, inner);
    for (std::size_t i = 0; i < hood.size(); ++i) {
      if ((hood[i] & in) == 0) continue;
      ++r.checked;
      const Point p = u.point_at(i);
      if (!ball_contains(space, outer, p)) {
        r.witness = p;
        return r;
      }
    }
    r.holds = true;
    return r;
  }
  r.regime = "sampled: closed-inequality ball";
  Rng rng(seed);
  const double extent = radial_extent(space, inner, true);
  for (const auto& p : probe_points(u, a, extent, samples, rng)) {
    if (!closed_ball_contains(space, inner, p)) continue;
    ++r.checked;
    if (!ball_contains(space, outer, p)) {
      r.witness = p;
      return r;
    }
  }
  r.holds = true;
  return r;
}

}  // namespace nmskit
