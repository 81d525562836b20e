#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nmskit/error.hpp"
#include "nmskit/space.hpp"
#include "support.hpp"

using namespace nmskit;
using testing::near;
using testing::pt;

namespace {

bool same(const DegreesTriple& a, const DegreesTriple& b, double tol = 1e-12) {
  return near(a.g, b.g, tol) && near(a.b, b.b, tol) && near(a.y, b.y, tol);
}

}  // namespace

TEST_CASE("standard construction worked values") {
  const NmsSpace s = testing::real_line();
  CHECK(same(s.evaluate(pt(0), pt(1), 1), {0.5, 0.5, 1.0}));
  CHECK(same(s.evaluate(pt(0), pt(2), 1), {1.0 / 3, 2.0 / 3, 2.0}));
  CHECK(s.evaluate(pt(0), pt(1), 999).g == doctest::Approx(0.999));
  CHECK(s.evaluate(pt(3), pt(3), 0.25) == DegreesTriple{1, 0, 0});
  CHECK(s.evaluate(pt(0), pt(1), -1) == DegreesTriple{0, 1, 1});
  CHECK(s.evaluate(pt(0), pt(1), 0) == DegreesTriple{0, 1, 1});
  CHECK_THROWS_AS(s.evaluate(pt(0), pt(1), std::nan("")), Error);
}

TEST_CASE("standard construction against the distance oracle") {
  testing::Gen g(4);
  for (BaseMetric m : {BaseMetric::euclidean, BaseMetric::manhattan, BaseMetric::discrete}) {
    const NmsSpace s = standard_from_metric(Universe::real_vector(3, m, -5, 5), testing::minmax());
    for (int i = 0; i < 300; ++i) {
      Point a{{g.in(-5, 5), g.in(-5, 5), g.in(-5, 5)}}, b{{g.in(-5, 5), g.in(-5, 5), g.in(-5, 5)}};
      double d = 0;
      if (m == BaseMetric::euclidean) {
        for (int k = 0; k < 3; ++k) d += (a.coords[k] - b.coords[k]) * (a.coords[k] - b.coords[k]);
        d = std::sqrt(d);
      } else if (m == BaseMetric::manhattan) {
        for (int k = 0; k < 3; ++k) d += std::fabs(a.coords[k] - b.coords[k]);
      } else {
        d = a == b ? 0 : 1;
      }
      const double lambda = std::exp(g.in(-5, 5));
      CHECK(same(s.evaluate(a, b, lambda), testing::standard_degrees(d, lambda), 1e-12));
      CHECK(s.evaluate(a, b, lambda) == s.evaluate(b, a, lambda));
    }
  }
}

TEST_CASE("naturals example") {
  const NmsSpace s = naturals_example(100, testing::minmax());
  CHECK(same(s.evaluate(pt(2), pt(4), 1), {0.5, 0.5, 2}));
  CHECK(s.evaluate(pt(1), pt(3), 1).y == 2);
  CHECK(s.evaluate(pt(7), pt(7), 3) == DegreesTriple{1, 0, 0});
  CHECK(s.evaluate(pt(1), pt(2), -2) == DegreesTriple{0, 1, 1});
  testing::Gen g(8);
  for (int i = 0; i < 500; ++i) {
    const double a = 1 + static_cast<double>(g.below(100)), b = 1 + static_cast<double>(g.below(100));
    const double lambda = g.in(0.01, 1e4);
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(same(s.evaluate(pt(a), pt(b), lambda), {lo / hi, (hi - lo) / hi, hi - lo}));
    CHECK(s.evaluate(pt(a), pt(b), lambda) == s.evaluate(pt(a), pt(b), 1.0));
  }
  CHECK_THROWS_AS(s.evaluate(pt(0), pt(2), 1), Error);
  CHECK_THROWS_AS(s.evaluate(pt(101), pt(2), 1), Error);
  CHECK_THROWS_AS(s.evaluate(pt(1.5), pt(2), 1), Error);
  CHECK_THROWS_AS(naturals_example(1, testing::minmax()), Error);
}

TEST_CASE("standard construction needs a metric") {
  CHECK_THROWS_AS(standard_from_metric(Universe::naturals(10), testing::minmax()), Error);
  CHECK_THROWS_AS(standard_from_metric(Universe::finite_labels({"a", "b"}), testing::minmax()), Error);
}

TEST_CASE("finite universes validate their distance matrix") {
  CHECK_NOTHROW(Universe::finite({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  CHECK_THROWS_AS(Universe::finite({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), Error);  // triangle
  CHECK_THROWS_AS(Universe::finite({"a", "b"}, {{0, 1}, {2, 0}}), Error);                          // asymmetric
  CHECK_THROWS_AS(Universe::finite({"a", "b"}, {{0, 0}, {0, 0}}), Error);                          // not separated
  CHECK_THROWS_AS(Universe::finite({"a", "b"}, {{1, 1}, {1, 0}}), Error);                          // diagonal
  CHECK_THROWS_AS(Universe::finite({"a", "a"}, {{0, 1}, {1, 0}}), Error);                          // duplicate label

  const Universe u = Universe::finite({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(u.size() == 3);
  CHECK(u.diameter() == 2);
  CHECK(u.label(u.point_by_label("c")) == "c");
  CHECK(u.distance(u.point_by_label("a"), u.point_by_label("c")) == 2);
  CHECK_THROWS_AS(u.point_by_label("z"), Error);
}

TEST_CASE("tabulated space interpolates linearly in lambda") {
  const Universe u = Universe::finite_labels({"x", "y"});
  DegreeTable t;
  t.lambdas = {1, 3};
  t.entries[{0, 1}] = {make_degrees(0.2, 0.6, 0.8), make_degrees(0.6, 0.2, 0.4)};
  const NmsSpace s = tabulated_space(u, testing::minmax(), t);
  const Point x = u.point_by_label("x"), y = u.point_by_label("y");
  CHECK(same(s.evaluate(x, y, 2), {0.4, 0.4, 0.6}));
  CHECK(same(s.evaluate(y, x, 2), {0.4, 0.4, 0.6}));
  CHECK(same(s.evaluate(x, y, 0.5), {0.2, 0.6, 0.8}));  // constant below the first knot
  CHECK(same(s.evaluate(x, y, 10), {0.6, 0.2, 0.4}));   // and past the last
  CHECK(s.evaluate(x, x, 2) == DegreesTriple{1, 0, 0});
  CHECK(s.evaluate(x, y, -1) == DegreesTriple{0, 1, 1});
}

TEST_CASE("degrees must be finite and non-negative") {
  CHECK_THROWS_AS(make_degrees(-0.1, 0, 0), Error);
  CHECK_THROWS_AS(make_degrees(0, INFINITY, 0), Error);
  CHECK_NOTHROW(make_degrees(0.5, 0.5, 2.0));
}

TEST_CASE("sampling stays inside the universe and is reproducible") {
  const Universe u = Universe::real_vector(2, BaseMetric::euclidean, -1, 1);
  Rng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    const Point p = u.sample(a);
    CHECK(p == u.sample(b));
    CHECK(u.contains(p));
  }
  const Universe n = Universe::naturals(5);
  Rng r(1);
  for (int i = 0; i < 100; ++i) CHECK(n.contains(n.sample(r)));
  CHECK(n.points().size() == 5);
}
