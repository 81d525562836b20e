#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "doctest.h"
#include "nmskit/error.hpp"
#include "nmskit/topology.hpp"
#include "support.hpp"

using namespace nmskit;
using testing::pt;

namespace {

bool in_ball_oracle(double d, double eps, double lambda) {
  const auto t = testing::standard_degrees(d, lambda);
  return t.g > 1 - eps && t.b < eps && t.y < eps;
}

// Topology generated by `base` on n points, by brute force: close under
// pairwise intersections and unions until nothing changes.
std::set<std::uint64_t> brute_topology(std::size_t n, const std::vector<std::uint64_t>& base) {
  const std::uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
  std::set<std::uint64_t> fam(base.begin(), base.end());
  fam.insert(0);
  fam.insert(full);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::uint64_t> cur(fam.begin(), fam.end());
    for (auto a : cur)
      for (auto b : cur) {
        grew |= fam.insert(a & b).second;
        grew |= fam.insert(a | b).second;
      }
  }
  return fam;
}

std::uint64_t closure_oracle(const std::set<std::uint64_t>& open, std::size_t n, std::uint64_t s) {
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < n; ++x) {
    bool meets_all = true;
    for (auto o : open)
      if ((o >> x & 1) && !(o & s)) meets_all = false;
    if (meets_all) out |= 1ull << x;
  }
  return out;
}

std::uint64_t interior_oracle(const std::set<std::uint64_t>& open, std::uint64_t s) {
  std::uint64_t out = 0;
  for (auto o : open)
    if ((o & ~s) == 0) out |= o;
  return out;
}

NmsSpace random_finite(testing::Gen& g, std::size_t n) {
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < n; ++i) coords.push_back({g.in(0, 3)});
  return standard_from_metric(Universe::from_coordinates(testing::labels(n), coords, BaseMetric::euclidean),
                              testing::minmax());
}

}  // namespace

TEST_CASE("ball membership is strict") {
  const NmsSpace s = testing::real_line();
  const OpenBall b{pt(0), 0.5, 1};
  CHECK(ball_contains(s, b, pt(0.3)));
  CHECK_FALSE(ball_contains(s, b, pt(0.5)));  // Y = 0.5 exactly
  CHECK(closed_ball_contains(s, b, pt(0.5)));
  testing::Gen g(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = g.in(-3, 3), eps = g.in(0.01, 0.99), lambda = std::exp(g.in(-3, 3));
    CHECK(ball_contains(s, OpenBall{pt(0), eps, lambda}, pt(x)) == in_ball_oracle(std::fabs(x), eps, lambda));
  }
  CHECK_THROWS_AS(validate_ball(OpenBall{pt(0), 1.0, 1}), Error);
  CHECK_THROWS_AS(validate_ball(OpenBall{pt(0), 0.5, 0}), Error);
}

TEST_CASE("interior ball witness stays inside the outer ball") {
  const NmsSpace s = testing::real_line();
  testing::Gen g(12);
  int built = 0;
  for (int i = 0; i < 60; ++i) {
    const OpenBall outer{pt(g.in(-2, 2)), g.in(0.1, 0.9), std::exp(g.in(-1, 2))};
    const Point b = pt(outer.center.coords[0] + g.in(-0.3, 0.3) * outer.lambda * outer.epsilon);
    if (!ball_contains(s, outer, b)) continue;
    InteriorBallOptions opt;
    opt.seed = static_cast<std::uint64_t>(i);
    const InteriorBallResult r = interior_ball_witness(s, outer, b, opt);
    REQUIRE(r.ball.has_value());
    ++built;
    CHECK_FALSE(r.violation.has_value());
    CHECK(r.lambda0 > 0);
    CHECK(r.lambda0 < outer.lambda);
    CHECK(r.ball->lambda == doctest::Approx(outer.lambda - r.lambda0));
    CHECK(ball_contains(s, *r.ball, b));
    // independent sweep through the inner ball along the line
    for (int k = -200; k <= 200; ++k) {
      const Point q = pt(b.coords[0] + k * r.ball->lambda * r.ball->epsilon / 200.0);
      if (ball_contains(s, *r.ball, q)) CHECK(ball_contains(s, outer, q));
    }
  }
  CHECK(built > 20);
}

TEST_CASE("interior ball on a finite universe is exhaustive") {
  testing::Gen g(6);
  const NmsSpace s = random_finite(g, 8);
  const auto pts = s.universe().points();
  const OpenBall outer{pts[0], 0.6, 5};
  for (const Point& b : pts) {
    if (!ball_contains(s, outer, b)) continue;
    const InteriorBallResult r = interior_ball_witness(s, outer, b);
    CHECK(r.exhaustive);
    CHECK_FALSE(r.violation.has_value());
    for (const Point& q : pts)
      if (ball_contains(s, *r.ball, q)) CHECK(ball_contains(s, outer, q));
  }
}

TEST_CASE("hausdorff balls are disjoint for distinct points") {
  const NmsSpace s = testing::real_line(-50, 50);
  testing::Gen g(31);
  for (int i = 0; i < 40; ++i) {
    const double a = g.in(-20, 20), b = a + (g.unit() < 0.5 ? -1 : 1) * g.in(0.01, 5);
    const double lambda = std::fabs(a - b) * g.in(1.01, 20);  // keeps Y < 1
    const HausdorffResult r = hausdorff_witness(s, pt(a), pt(b), lambda);
    REQUIRE(r.applicable);
    CHECK(r.disjoint());
    // oracle: no point of a fine grid spanning both balls is in both
    const double lo = std::min(a, b) - lambda, hi = std::max(a, b) + lambda;
    for (int k = 0; k <= 2000; ++k) {
      const Point q = pt(lo + (hi - lo) * k / 2000.0);
      CHECK_FALSE((ball_contains(s, *r.ball_a, q) && ball_contains(s, *r.ball_b, q)));
    }
  }
  const HausdorffResult na = hausdorff_witness(s, pt(0), pt(3), 1);  // Y = 3
  CHECK_FALSE(na.applicable);
  CHECK_FALSE(na.disjoint());
  CHECK_FALSE(na.reason.empty());
  CHECK_THROWS_AS(hausdorff_witness(s, pt(1), pt(1), 1), Error);
}

TEST_CASE("neutrosophic boundedness on a grid") {
  const NmsSpace s = standard_from_metric(
      Universe::from_coordinates({"a", "b", "c"}, {{0.0}, {1.0}, {5.0}}, BaseMetric::euclidean), testing::minmax());
  const auto u = s.universe();
  const std::vector<Point> ab{u.point_by_label("a"), u.point_by_label("b")};
  const auto nb = is_neutro_bounded(s, ab, {1, 10}, {0.2, 0.5, 0.9});
  REQUIRE(nb.has_value());
  // lambda = 1: Y(a, b) = 1 is never below epsilon; lambda = 10 gives (10/11, 1/11, 1/10)
  CHECK(nb->lambda == 10);
  CHECK(nb->epsilon == 0.2);
  CHECK_FALSE(is_neutro_bounded(s, {u.point_by_label("a"), u.point_by_label("c")}, {1, 2}, {0.5}).has_value());
}

TEST_CASE("boundedness certificate from a cover") {
  const NmsSpace s = testing::real_line();
  const std::vector<Point> subset{pt(0), pt(1)};
  const NbCertificate c = nb_certificate_via_cover(s, subset, subset, 0.1, 2);
  // centers at distance 1, lambda 2: rho = 2/3, sigma = 1/3, phi = 1/2; under min/max the
  // folded bounds are min(0.9, 2/3), max(0.1, 1/3), max(0.1, 1/2)
  CHECK(c.rho == doctest::Approx(2.0 / 3));
  CHECK(c.phi == doctest::Approx(0.5));
  const double need = std::max({1 - std::min(0.9, 2.0 / 3), std::max(0.1, 1.0 / 3), std::max(0.1, 0.5)});
  const double zeta = std::floor(need * 100 + 1) / 100;  // smallest hundredth strictly above
  REQUIRE(c.zeta.has_value());
  CHECK(*c.zeta == doctest::Approx(zeta));
  CHECK(*c.zeta == doctest::Approx(0.51));
  CHECK(*c.lambda0 == 6);
  CHECK(c.verified);

  // at lambda 1 the centers are Y = 1 apart: no zeta in (0, 1)
  const NbCertificate none = nb_certificate_via_cover(s, subset, subset, 0.1, 1);
  CHECK_FALSE(none.zeta.has_value());
  CHECK_THROWS_AS(nb_certificate_via_cover(s, {pt(0), pt(4)}, {pt(0)}, 0.1, 2), Error);
}

TEST_CASE("finite topology matches a brute-force closure") {
  testing::Gen g(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + g.below(5);
    const NmsSpace s = random_finite(g, n);
    const std::vector<double> eps{g.in(0.05, 0.95), g.in(0.05, 0.95)}, lam{std::exp(g.in(-1, 2))};
    const FiniteTopology t = generate_finite_topology(s, eps, lam);
    std::vector<std::uint64_t> base;
    for (const auto& b : t.base()) base.push_back(b.members);
    const auto oracle = brute_topology(n, base);
    CHECK(std::set<std::uint64_t>(t.open_sets().begin(), t.open_sets().end()) == oracle);
    CHECK(t.reclosure_fixpoint());
    for (std::uint64_t sub = 0; sub <= t.full(); ++sub) {
      CHECK(t.closure(sub) == closure_oracle(oracle, n, sub));
      CHECK(t.interior(sub) == interior_oracle(oracle, sub));
      CHECK(t.is_open(sub) == (oracle.count(sub) == 1));
    }
  }
}

TEST_CASE("nowhere-dense lattice and ball criterion agree, Baire holds") {
  testing::Gen g(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + g.below(6);
    const NmsSpace s = random_finite(g, n);
    std::vector<double> lam{std::exp(g.in(-1, 2))};
    std::vector<double> eps{g.in(0.05, 0.95)};
    if (auto r = separating_radius(s, lam[0])) eps.push_back(*r);
    const FiniteTopology t = generate_finite_topology(s, eps, lam);
    for (std::uint64_t sub = 0; sub <= t.full(); ++sub) {
      const NowhereDenseResult r = is_nowhere_dense(t, sub);
      CHECK(r.agree());
      CHECK(r.lattice == (t.interior(t.closure(sub)) == 0));
    }
    const BaireResult b = baire_probe(t);
    CHECK(b.dense);
    CHECK(t.is_dense(b.intersection));
  }
}

TEST_CASE("separating radius gives the discrete topology") {
  testing::Gen g(8);
  const NmsSpace s = random_finite(g, 6);
  const auto r = separating_radius(s, 1.0);
  REQUIRE(r.has_value());
  const FiniteTopology t = generate_finite_topology(s, {*r}, {1.0});
  CHECK(t.is_discrete());
  CHECK(t.open_sets().size() == 64);
  // every nonempty set has empty-interior closure only when empty
  for (std::uint64_t sub = 1; sub <= t.full(); ++sub) CHECK_FALSE(is_nowhere_dense(t, sub).lattice);
}

TEST_CASE("finite topology limits") {
  CHECK_THROWS_AS(generate_finite_topology(testing::real_line(), {0.5}, {1}), Error);
  std::vector<std::vector<double>> coords;
  for (int i = 0; i < 64; ++i) coords.push_back({double(i)});
  const NmsSpace big = standard_from_metric(
      Universe::from_coordinates(testing::labels(64), coords, BaseMetric::euclidean), testing::minmax());
  try {
    generate_finite_topology(big, {0.5}, {1});
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::capacity);
  }
}

TEST_CASE("closure lemma on finite universes") {
  testing::Gen g(44);
  int run = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const NmsSpace s = random_finite(g, 3 + g.below(6));
    double e1 = g.in(0.05, 0.95), e2 = g.in(0.05, 0.95);
    if (e2 > e1) std::swap(e1, e2);  // min/max hypotheses reduce to e2 <= e1
    const double lambda = std::exp(g.in(-1, 2));
    const Point a = s.universe().point_at(g.below(s.universe().size()));
    const ClosureCheckResult r = closure_containment_check(s, a, e1, e2, lambda, 0, trial);
    ++run;
    CHECK(r.holds);
    CHECK(r.exact);
    for (const Point& q : s.universe().points())
      if (ball_contains(s, OpenBall{a, e2, lambda / 2}, q)) CHECK(ball_contains(s, OpenBall{a, e1, lambda}, q));
  }
  CHECK(run == 60);
  const NmsSpace s = testing::real_line();
  CHECK_THROWS_AS(closure_containment_check(s, pt(0), 0.3, 0.5, 1, 100), Error);
  const ClosureCheckResult sampled = closure_containment_check(s, pt(0), 0.5, 0.3, 2, 2000, 1);
  CHECK(sampled.holds);
  CHECK_FALSE(sampled.exact);
}

TEST_CASE("countable base prefix") {
  testing::Gen g(10);
  const NmsSpace s = random_finite(g, 5);
  const BasePrefix p = countable_base_prefix(s, s.universe().points(), 10);
  CHECK(p.balls.size() == 50);
  CHECK(p.clamped);
  CHECK(p.balls.front().epsilon == kClampedRadius);
  for (const auto& b : p.balls) CHECK_NOTHROW(validate_ball(b));
  REQUIRE(p.base_property.has_value());
  CHECK(*p.base_property);

  const BasePrefix line = countable_base_prefix(testing::real_line(), {pt(0), pt(0.5)}, 3);
  CHECK(line.balls.size() == 6);
  CHECK_FALSE(line.base_property.has_value());
  CHECK(line.balls[1].epsilon == doctest::Approx(0.5));
}
