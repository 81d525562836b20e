#include <algorithm>

#include "doctest.h"
#include "nmskit/axioms.hpp"
#include "nmskit/error.hpp"
#include "nmskit/serialize.hpp"
#include "support.hpp"

using namespace nmskit;
using testing::pt;

TEST_CASE("axiom labels round-trip") {
  for (int a = 1; a <= kAxiomCount; ++a) {
    CHECK(parse_axiom(axiom_label(a)) == a);
    CHECK(parse_axiom(std::to_string(a)) == a);
  }
  CHECK(axiom_label(18) == "xviii");
  CHECK_THROWS_AS(parse_axiom("xix"), Error);
  CHECK_THROWS_AS(axiom_label(0), Error);
}

TEST_CASE("standard space with lambda above the diameter passes everything") {
  testing::Gen g(17);
  const NmsSpace s = testing::random_planar(g, 20);
  const double diam = s.universe().diameter();
  AxiomCheckOptions opt;
  opt.samples = 4000;
  opt.lambda_grid = {1.5 * diam, 10 * diam, 100 * diam};
  const AxiomReport r = check_axioms(s, opt);
  CHECK(r.passed());
  REQUIRE(r.entries.size() == 18);
  for (const auto& e : r.entries) {
    CAPTURE(e.axiom);
    CHECK(e.failures == 0);
    CHECK(e.witnesses.empty());
    CHECK(e.status != AxiomStatus::fail);
  }
  CHECK(r.entry(4).status == AxiomStatus::structural);
  CHECK(r.entry(6).status == AxiomStatus::probe_limited);
  CHECK(r.entry(7).status == AxiomStatus::probe_limited);
  CHECK(r.entry(18).status == AxiomStatus::pass);
}

TEST_CASE("small lambda exposes Y above one") {
  const NmsSpace s = standard_from_metric(
      Universe::from_coordinates({"a", "b", "c"}, {{0.0}, {1.0}, {3.0}}, BaseMetric::euclidean), testing::minmax());
  AxiomCheckOptions opt;
  opt.samples = 500;
  opt.lambda_grid = {0.5, 1, 10};
  const AxiomReport r = check_axioms(s, opt);
  const auto failed = r.failed_axioms();
  CHECK(std::find(failed.begin(), failed.end(), 1) != failed.end());
  const AxiomEntry& e = r.entry(1);
  REQUIRE_FALSE(e.witnesses.empty());
  for (const Witness& w : e.witnesses) {
    CHECK(replay_witness(s, w, opt));
    const DegreesTriple d = s.evaluate(w.points.at(0), w.points.at(1), w.scales.at(0));
    CHECK(d.y > 1.0);
    CHECK(s.universe().distance(w.points[0], w.points[1]) > w.scales[0]);
  }
}

TEST_CASE("naturals example fails range and limit axioms") {
  const NmsSpace s = naturals_example(100, testing::minmax());
  AxiomCheckOptions opt;
  opt.samples = 2000;
  opt.seed = 3;
  opt.lambda_grid = {1, 10, 100};
  const AxiomReport r = check_axioms(s, opt);
  CHECK(r.entry(1).status == AxiomStatus::fail);
  CHECK(r.entry(7).status == AxiomStatus::fail);
  CHECK(r.entry(18).status == AxiomStatus::pass);
  for (int a : r.failed_axioms())
    for (const Witness& w : r.entry(a).witnesses) {
      CAPTURE(a);
      CHECK(w.axiom == a);
      CHECK(replay_witness(s, w, opt));
    }
  // (1, 3): Y = 2 lies outside [0, 1]
  CHECK(s.evaluate(pt(1), pt(3), 1).y == 2);
  const Witness& lim = r.entry(7).witnesses.front();
  const DegreesTriple top = s.evaluate(lim.points[0], lim.points[1], opt.lambda_max);
  CHECK(1 - top.g > opt.limit_tol);
}

TEST_CASE("reports are deterministic under a fixed seed") {
  const NmsSpace s = naturals_example(50, testing::minmax());
  AxiomCheckOptions opt;
  opt.samples = 800;
  opt.seed = 99;
  const std::string a = dump_stable(to_json(s.universe(), check_axioms(s, opt)));
  const std::string b = dump_stable(to_json(s.universe(), check_axioms(s, opt)));
  CHECK(a == b);
  opt.seed = 100;
  CHECK(dump_stable(to_json(s.universe(), check_axioms(s, opt))) != a);
}

TEST_CASE("the triangle witness (1, 10, 100) replays on the naturals") {
  const NmsSpace s = naturals_example(100, testing::minmax());
  Witness w;
  w.axiom = 5;
  w.check = "triangle";
  w.points = {pt(1), pt(10), pt(100)};
  w.scales = {1, 1};
  CHECK(replay_witness(s, w));
  const double lhs = std::min(s.evaluate(pt(1), pt(10), 1).g, s.evaluate(pt(10), pt(100), 1).g);
  CHECK(lhs == doctest::Approx(0.1));
  CHECK(s.evaluate(pt(1), pt(100), 2).g == doctest::Approx(0.01));
}

TEST_CASE("counterexample search") {
  const NmsSpace nat = naturals_example(100, testing::minmax());
  for (SearchStrategy st : {SearchStrategy::random, SearchStrategy::grid, SearchStrategy::adversarial_line}) {
    CounterexampleOptions co;
    co.axioms = {5};
    co.budget = 1000000;
    co.strategy = st;
    const CounterexampleResult r = find_counterexample(nat, co);
    CAPTURE(to_string(st));
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->axiom == 5);
    CHECK(replay_witness(nat, *r.witness));
    CHECK(r.evaluations <= co.budget);
  }

  // the clamp holds by construction, so the budget runs out
  CounterexampleOptions clamp;
  clamp.axioms = {18};
  clamp.budget = 5000;
  const CounterexampleResult none = find_counterexample(nat, clamp);
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.note.find("not a proof") != std::string::npos);

  testing::Gen g(2);
  const NmsSpace planar = testing::random_planar(g, 10);
  CounterexampleOptions range;
  range.axioms = {1, 2};
  range.budget = 20000;
  range.check.lambda_grid = {2 * planar.universe().diameter()};
  range.strategy = SearchStrategy::grid;
  CHECK_FALSE(find_counterexample(planar, range).witness.has_value());
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("adversarial-line") == SearchStrategy::adversarial_line);
  CHECK(parse_strategy("adversarial_line") == SearchStrategy::adversarial_line);
  CHECK(parse_strategy("grid") == SearchStrategy::grid);
  CHECK_THROWS_AS(parse_strategy("annealing"), Error);
}
