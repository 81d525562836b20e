// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all
// pass. Each criterion recomputes its expectation independently where it can.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nmskit/axioms.hpp"
#include "nmskit/commands.hpp"
#include "nmskit/norms.hpp"
#include "nmskit/sequences.hpp"
#include "nmskit/serialize.hpp"
#include "nmskit/topology.hpp"

using namespace nmskit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

NormPair minmax() { return NormPair::named("min", "max"); }
Point pt(double x) { return Point{{x}}; }

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("p" + std::to_string(i));
  return v;
}

NmsSpace random_finite(std::mt19937_64& eng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> coords(n);
  for (auto& c : coords)
    for (std::size_t k = 0; k < dim; ++k) c.push_back(u(eng));
  return standard_from_metric(Universe::from_coordinates(labels(n), coords, BaseMetric::euclidean), minmax());
}

// ---------------------------------------------------------------------------

Outcome c1_norms() {
  Outcome o;
  const auto t0 = Clock::now();
  NormVerifyOptions opt;
  opt.samples = 100000;
  const char* pairs[][2] = {{"min", "max"}, {"product", "probsum"}, {"lukasiewicz", "probsum"}};
  for (auto& p : pairs)
    for (const char* name : p) {
      const NormReport r = verify_norm_axioms(NormKernel::builtin(name), opt);
      o.expect(r.passed() && r.witness_count() == 0, std::string(name) + " reported a witness");
    }
  const NormReport mean = verify_norm_axioms(NormKernel::arithmetic_mean(NormKind::tnorm), opt);
  const NormCheck& assoc = mean.check("associativity");
  o.expect(!assoc.witnesses.empty(), "arithmetic mean passed associativity");
  if (!assoc.witnesses.empty()) {
    const NormWitness& w = assoc.witnesses.front();
    auto m = [](double a, double b) { return (a + b) / 2; };
    o.expect(std::fabs(m(m(w.s, w.t), w.u) - m(w.s, m(w.t, w.u))) > opt.tol, "associativity witness does not replay");
  }
  const double dt = seconds_since(t0);
  o.expect(dt < 5.0, "runtime " + fmt("%.2f s", dt));
  if (o.ok) o.detail = "6 kernels clean at 1e5 samples; mean fails associativity; " + fmt("%.2f s", dt);
  return o;
}

Outcome c2_standard() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 eng(2024);
  const NmsSpace s = random_finite(eng, 20, 2);
  const double diam = s.universe().diameter();
  AxiomCheckOptions opt;
  opt.samples = 10000;
  opt.lambda_grid = {1.01 * diam, 10 * diam, 100 * diam};
  const AxiomReport r = check_axioms(s, opt);
  std::size_t witnesses = 0;
  for (const auto& e : r.entries) {
    witnesses += e.witnesses.size();
    o.expect(e.status != AxiomStatus::fail, "axiom " + axiom_label(e.axiom) + " failed");
  }
  o.expect(r.entries.size() == 18 && witnesses == 0, "witnesses reported");
  const double dt = seconds_since(t0);
  o.expect(dt < 10.0, "runtime " + fmt("%.2f s", dt));
  if (o.ok) o.detail = "18/18 pass or probe-pass, 0 witnesses; " + fmt("%.2f s", dt);
  return o;
}

Outcome c3_errata() {
  Outcome o;
  // (a) a lambda below some pairwise distance
  std::mt19937_64 eng(7);
  const NmsSpace s = random_finite(eng, 10, 2);
  AxiomCheckOptions a;
  a.samples = 5000;
  a.seed = 11;
  a.lambda_grid = {0.5 * s.universe().diameter(), 10};
  const AxiomReport ra = check_axioms(s, a);
  o.expect(ra.entry(1).status == AxiomStatus::fail, "(a) axiom i not flagged");
  for (const auto& w : ra.entry(1).witnesses) {
    o.expect(replay_witness(s, w, a), "(a) witness does not replay");
    o.expect(s.universe().distance(w.points.at(0), w.points.at(1)) > w.scales.at(0), "(a) witness has d <= lambda");
  }

  // (b) naturals
  const NmsSpace nat = naturals_example(100, minmax());
  AxiomCheckOptions b;
  b.samples = 5000;
  b.seed = 11;
  b.lambda_grid = {1, 10, 100};
  const AxiomReport rb = check_axioms(nat, b);
  o.expect(rb.entry(1).status == AxiomStatus::fail, "(b) axiom i not flagged");
  o.expect(rb.entry(7).status == AxiomStatus::fail, "(b) axiom vii not flagged");
  for (int ax : {1, 7})
    for (const auto& w : rb.entry(ax).witnesses) o.expect(replay_witness(nat, w, b), "(b) witness does not replay");
  o.expect(nat.evaluate(pt(1), pt(3), 1).y == 2.0, "(b) Y(1, 3) != 2");
  Witness canon;
  canon.axiom = 1;
  canon.check = "range";
  canon.points = {pt(1), pt(3)};
  canon.scales = {1};
  o.expect(replay_witness(nat, canon, b), "(b) witness (1, 3) does not replay");

  const std::string j1 = dump_stable(to_json(nat.universe(), rb));
  const std::string j2 = dump_stable(to_json(nat.universe(), check_axioms(nat, b)));
  o.expect(j1 == j2, "report differs under a fixed seed");
  if (o.ok)
    o.detail = "(a) " + std::to_string(ra.entry(1).failures) + " range failures; (b) i and vii flagged, (1, 3) gives Y = 2";
  return o;
}

Outcome c4_remark() {
  Outcome o;
  const auto t0 = Clock::now();
  const NmsSpace nat = naturals_example(100, minmax());
  CounterexampleOptions co;
  co.axioms = {5};
  co.budget = 1000000;
  co.strategy = SearchStrategy::adversarial_line;
  const CounterexampleResult r = find_counterexample(nat, co);
  o.expect(r.witness.has_value(), "no axiom v witness in budget");
  if (r.witness) o.expect(replay_witness(nat, *r.witness), "found witness does not replay");
  o.expect(r.evaluations <= co.budget, "budget exceeded");

  Witness canon;
  canon.axiom = 5;
  canon.check = "triangle";
  canon.points = {pt(1), pt(10), pt(100)};
  canon.scales = {1, 1};
  o.expect(replay_witness(nat, canon), "(1, 10, 100) does not replay");
  const double lhs = std::min(1.0 / 10, 10.0 / 100), rhs = 1.0 / 100;
  o.expect(lhs == 0.1 && lhs > rhs, "oracle arithmetic");
  o.expect(std::min(nat.evaluate(pt(1), pt(10), 1).g, nat.evaluate(pt(10), pt(100), 1).g) == lhs &&
               nat.evaluate(pt(1), pt(100), 2).g == rhs,
           "evaluated degrees differ from min(0.1, 0.1) > 0.01");
  const double dt = seconds_since(t0);
  o.expect(dt < 10.0, "runtime " + fmt("%.2f s", dt));
  if (o.ok)
    o.detail = "witness after " + std::to_string(r.evaluations) + " evaluations; (1, 10, 100) replays; " + fmt("%.2f s", dt);
  return o;
}

Outcome c5_hausdorff() {
  Outcome o;
  const NmsSpace s = standard_from_metric(Universe::real_vector(1, BaseMetric::euclidean, -100, 100), minmax());
  std::mt19937_64 eng(55);
  std::uniform_real_distribution<double> pos(-50, 50), gap(0.01, 10), stretch(1.05, 50);
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = pos(eng), b = a + gap(eng) * (i % 2 ? 1 : -1);
    const double lambda = std::fabs(a - b) * stretch(eng);  // Y = d / lambda in (0, 1)
    HausdorffOptions opt;
    opt.samples = 1000;
    opt.seed = static_cast<std::uint64_t>(i);
    const HausdorffResult r = hausdorff_witness(s, pt(a), pt(b), lambda, opt);
    if (r.applicable && r.disjoint() && r.verified_points >= 1000) ++ok;
  }
  o.expect(ok == 100, std::to_string(ok) + "/100 disjoint");
  if (o.ok) o.detail = "100/100 disjoint on 1000-point samples";
  return o;
}

Outcome c6_closure() {
  Outcome o;
  std::mt19937_64 eng(66);
  std::uniform_real_distribution<double> u(0.02, 0.98), loglam(-2, 2);
  int ok = 0, tried = 0;
  const char* tn[] = {"min", "product", "lukasiewicz"};
  const char* tc[] = {"max", "probsum", "probsum"};
  while (tried < 100) {
    const std::size_t n = 3 + eng() % 8;
    const int k = static_cast<int>(eng() % 3);
    const NmsSpace s = random_finite(eng, n, 2).with_norms(NormPair::named(tn[k], tc[k]));
    const double e1 = u(eng), e2 = u(eng), lambda = std::exp(loglam(eng));
    const NormKernel& T = s.norms().tnorm();
    const NormKernel& S = s.norms().tconorm();
    if (!(T.raw(1 - e2, 1 - e2) >= 1 - e1 && S.raw(e2, e2) <= e1)) continue;  // hypotheses
    ++tried;
    const Point a = s.universe().point_at(eng() % n);
    const ClosureCheckResult r = closure_containment_check(s, a, e1, e2, lambda, 0, tried);
    if (r.holds && r.exact) ++ok;
  }
  o.expect(ok == 100, std::to_string(ok) + "/100 contained");
  if (o.ok) o.detail = "100/100 exact closures contained";
  return o;
}

Outcome c7_finite_model() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 eng(77);
  std::uniform_real_distribution<double> u(0.05, 0.95), loglam(-1, 1);
  std::size_t subsets = 0;
  int baire = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + eng() % 6;
    const NmsSpace s = random_finite(eng, n, 2);
    std::vector<double> lam{std::exp(loglam(eng)), std::exp(loglam(eng))};
    std::vector<double> eps{u(eng), u(eng)};
    // the resolving radius makes the ball topology the one the metric induces
    if (auto r = separating_radius(s, lam[0])) eps.push_back(*r);
    const FiniteTopology t = generate_finite_topology(s, eps, lam);
    for (std::uint64_t sub = 0; sub <= t.full(); ++sub, ++subsets) {
      const NowhereDenseResult r = is_nowhere_dense(t, sub);
      o.expect(r.agree(), "disagreement on space " + std::to_string(i));
      o.expect(r.lattice == (t.interior(t.closure(sub)) == 0), "lattice value off on space " + std::to_string(i));
    }
    if (baire_probe(t).dense) ++baire;
  }
  o.expect(baire == 200, "Baire probe failed on " + std::to_string(200 - baire) + " topologies");
  const double dt = seconds_since(t0);
  o.expect(dt < 60.0, "runtime " + fmt("%.2f s", dt));
  if (o.ok) o.detail = "200 spaces, " + std::to_string(subsets) + " subsets agree, Baire 200/200; " + fmt("%.2f s", dt);
  return o;
}

Outcome c8_sequences() {
  Outcome o;
  const NmsSpace line = standard_from_metric(Universe::real_vector(1, BaseMetric::euclidean, -1, 1), minmax());
  SequenceOptions opt;
  const PointSequence h = PointSequence::harmonic(1, 1, opt.n_max);
  const PointSequence alt = PointSequence::alternating(1, 1, opt.n_max);
  o.expect(converges_to(line, h, pt(0), opt).holds, "harmonic does not converge");
  o.expect(is_cauchy(line, h, opt).holds, "harmonic not Cauchy");
  o.expect(!is_cauchy(line, alt, opt).holds, "alternating judged Cauchy");
  for (double l : {-1.0, 0.0, 1.0}) o.expect(!converges_to(line, alt, pt(l), opt).holds, "alternating converges");

  std::mt19937_64 eng(88);
  std::size_t cauchy = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NmsSpace s = random_finite(eng, 3 + eng() % 6, 2);
    SequenceOptions so;
    so.seed = seed;
    so.n_max = 200;
    const CompletenessReport r = completeness_probe(s, 1000, so);
    o.expect(r.trials == 1000 && r.failures == 0, "completeness failure at seed " + std::to_string(seed));
    cauchy += r.cauchy;
  }
  if (o.ok) o.detail = "harmonic converges and is Cauchy, alternating neither; 10 x 1000 sequences, " +
                       std::to_string(cauchy) + " Cauchy, 0 without limit";
  return o;
}

Outcome c9_uniform() {
  Outcome o;
  const NmsSpace line = standard_from_metric(Universe::real_vector(1, BaseMetric::euclidean, 0, 1), minmax());
  SequenceOptions opt;
  const FunctionSequence xn = FunctionSequence::named("x_over_n");
  const UniformReport r = uniform_convergence_check(line, xn, opt);
  o.expect(r.uniform, "x/n not uniform");
  if (r.uniform) {
    const ContinuityReport c =
        limit_continuity_probe(line, xn, r, {0, 0.25, 0.5, 0.75, 1}, {0.1, 0.01, 1e-3, 1e-4}, opt.lambda_grid);
    o.expect(c.continuous, "limit of x/n fails the continuity probe");
  }
  const UniformReport p = uniform_convergence_check(line, FunctionSequence::named("x_pow_n"), opt);
  o.expect(!p.uniform, "x^n judged uniform");
  o.expect(p.divergence_point && *p.divergence_point > 0.99 && *p.divergence_point < 1.0,
           "divergence point not near 1");
  o.expect(p.diagnosis.find("pointwise N") != std::string::npos, "diagnosis missing");
  if (o.ok) o.detail = "x/n uniform with continuous limit; x^n fails near x = " + fmt("%.6g", *p.divergence_point);
  return o;
}

Outcome c10_determinism() {
  Outcome o;
  const Json line = Json::parse(R"({"universe": {"kind": "real_vector", "dimension": 1, "box": [-2, 2]}})");
  const Json fin = Json::parse(R"({"universe": {"kind": "finite_labeled", "labels": ["a", "b", "c", "d"],
      "coordinates": [[0], [0.4], [1.5], [3]]}})");
  auto with = [](Json cfg, const Json& space) {
    cfg["space"] = space;
    return cfg;
  };
  const std::vector<std::pair<const char*, Json>> runs{
      {"check-axioms", Json::parse(R"({"space": {"universe": {"kind": "naturals", "bound": 100}}, "samples": 3000,
          "seed": 4, "counterexample": {"axioms": ["v"], "budget": 100000, "strategy": "random"}})")},
      {"check-axioms", with(Json::parse(R"({"samples": 2000, "seed": 9})"), line)},
      {"topology", with(Json::parse(R"({"task": "ball", "ball": {"center": 0, "epsilon": 0.4, "lambda": 2},
          "point": 0.1, "seed": 3})"), line)},
      {"topology", with(Json::parse(R"({"task": "hausdorff", "a": 0, "b": 1, "lambda": 3, "seed": 3})"), line)},
      {"topology", with(Json::parse(R"({"task": "nb", "subset": ["a", "b"], "centers": ["a", "b"],
          "epsilon": 0.1, "lambda": 2})"), fin)},
      {"topology", with(Json::parse(R"({"task": "closure-lemma", "a": "a", "epsilon1": 0.5, "epsilon2": 0.3,
          "lambda": 1})"), fin)},
      {"topology", with(Json::parse(R"({"task": "finite-topology", "epsilon_grid": [0.2, 0.7],
          "subsets": [["a"], ["b", "d"]]})"), fin)},
      {"topology", with(Json::parse(R"({"task": "baire"})"), fin)},
      {"topology", with(Json::parse(R"({"task": "base", "dense_points": ["a", "b", "c", "d"], "depth": 5})"), fin)},
      {"sequence", with(Json::parse(R"({"task": "converge", "sequence": {"generator": "harmonic"}, "limit": 0})"), line)},
      {"sequence", with(Json::parse(R"({"task": "cauchy", "sequence": {"generator": "alternating"}, "seed": 2})"), line)},
      {"sequence", with(Json::parse(R"({"task": "ndz", "family": [[0, 0.001, 1], [0, 0.001], [0]]})"), line)},
      {"sequence", with(Json::parse(R"({"task": "completeness", "trials": 300, "seed": 6})"), fin)},
      {"sequence", with(Json::parse(R"({"task": "uniform", "function": {"family": "x_over_n"},
          "continuity": {"points": [0, 0.5]}})"), line)},
      {"norms", Json::parse(R"({"kernel": "product", "samples": 20000, "seed": 1,
          "residual": {"epsilon1": 0.9, "epsilon2": 0.3}, "diagonal": {"epsilon5": 0.4}})")},
      {"norms", Json::parse(R"({"kernel": "arithmetic_mean", "samples": 5000})")},
  };
  for (const auto& [cmd, cfg] : runs) {
    const CommandResult a = run_command(cmd, cfg), b = run_command(cmd, cfg);
    o.expect(a.exit_code != exit_usage, std::string(cmd) + " config rejected: " + a.text);
    o.expect(dump_stable(a.report) == dump_stable(b.report), std::string(cmd) + " report changed between runs");
  }
  if (o.ok) o.detail = std::to_string(runs.size()) + " configs over all four commands byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"norm axiom suite", c1_norms},
      {"standard-construction soundness", c2_standard},
      {"errata detection", c3_errata},
      {"triangle counterexample on the naturals", c4_remark},
      {"Hausdorff witness", c5_hausdorff},
      {"closure containment", c6_closure},
      {"finite-model agreement", c7_finite_model},
      {"convergence and Cauchy coherence", c8_sequences},
      {"uniform convergence", c9_uniform},
      {"determinism", c10_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("%s  %2zu  %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
