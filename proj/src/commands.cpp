#include "nmskit/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

struct Outcome {
  int exit_code = exit_verified;
  std::string summary;
  std::string qualifier = "probe";
  Json results = Json::object();
  std::vector<std::string> lines;  // text body
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class Config {
 public:
  Config(const Json& j, std::string cmd) : j_(j), cmd_(std::move(cmd)) {
    if (!j_.is_object()) fail(ErrorCode::config, "config must be a JSON object");
  }

  void allow(std::initializer_list<std::string_view> keys) const { reject_unknown_keys(j_, keys, ""); }
  bool has(const std::string& k) const { return j_.contains(k); }
  const Json& at(const std::string& k) const { return require_key(j_, k, ""); }

  std::size_t count(const std::string& k, std::size_t def) const { return has(k) ? read_count(j_[k], k) : def; }
  double number(const std::string& k, double def) const { return has(k) ? read_number(j_[k], k) : def; }
  double number(const std::string& k) const { return read_number(at(k), k); }
  std::vector<double> numbers(const std::string& k, std::vector<double> def) const {
    if (!has(k)) return def;
    auto v = read_numbers(j_[k], k);
    if (v.empty()) fail(ErrorCode::config, "config key '" + k + "': must be non-empty");
    return v;
  }
  std::string string(const std::string& k) const { return read_string(at(k), k); }

  double unit(const std::string& k, double def) const {
    const double x = number(k, def);
    if (!(x > 0.0 && x < 1.0)) fail(ErrorCode::config, "config key '" + k + "': must lie in (0, 1)");
    return x;
  }
  double positive(const std::string& k) const {
    const double x = number(k);
    if (!(x > 0.0)) fail(ErrorCode::config, "config key '" + k + "': must be positive");
    return x;
  }
  std::vector<double> lambda_grid(std::vector<double> def = {0.1, 1.0, 10.0}) const {
    auto v = numbers("lambda_grid", std::move(def));
    for (double l : v)
      if (!(l > 0.0)) fail(ErrorCode::config, "config key 'lambda_grid': values must be positive");
    return v;
  }
  std::vector<double> epsilon_grid(std::vector<double> def) const {
    auto v = numbers("epsilon_grid", std::move(def));
    for (double e : v)
      if (!(e > 0.0 && e < 1.0)) fail(ErrorCode::config, "config key 'epsilon_grid': values must lie in (0, 1)");
    return v;
  }

  const std::string& command() const { return cmd_; }

 private:
  const Json& j_;
  std::string cmd_;
};

NmsSpace load_space(const Config& c) {
  const Json& s = c.at("space");
  if (s.is_string()) {
    const std::string path = s.get<std::string>();
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config, "config key 'space': cannot open '" + path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::config, "config key 'space': '" + path + "' is not valid JSON (" + e.what() + ")");
    }
    return space_from_json(j, "space");
  }
  return space_from_json(s, "space");
}

Json describe_space(const NmsSpace& s) {
  const Universe& u = s.universe();
  Json j{{"universe", to_string(u.kind())},
         {"construction", to_string(s.construction())},
         {"tnorm", s.norms().tnorm().name()},
         {"tconorm", s.norms().tconorm().name()}};
  if (u.is_finite()) j["size"] = u.size();
  else j["dimension"] = u.dimension();
  j["notes"] = s.notes();
  return j;
}

void verdict(Outcome& o, bool ok, std::string good, std::string bad) {
  o.exit_code = ok ? exit_verified : exit_finding;
  o.summary = ok ? std::move(good) : std::move(bad);
}

// ---------------------------------------------------------------------------

Outcome cmd_check_axioms(const Config& c) {
  c.allow({"space", "samples", "seed", "lambda_grid", "tol", "limit_tol", "lambda_max", "fd_step", "slope_bound",
           "max_witnesses", "counterexample"});
  const NmsSpace space = load_space(c);
  AxiomCheckOptions opt;
  opt.samples = c.count("samples", opt.samples);
  opt.seed = c.count("seed", 0);
  opt.lambda_grid = c.lambda_grid();
  opt.tol = c.number("tol", opt.tol);
  opt.limit_tol = c.number("limit_tol", opt.limit_tol);
  opt.lambda_max = c.number("lambda_max", opt.lambda_max);
  opt.fd_step = c.number("fd_step", opt.fd_step);
  opt.slope_bound = c.number("slope_bound", opt.slope_bound);
  opt.max_witnesses = c.count("max_witnesses", opt.max_witnesses);

  Outcome o;
  o.results["space"] = describe_space(space);
  const AxiomReport report = check_axioms(space, opt);
  o.results["axioms"] = to_json(space.universe(), report);

  o.lines.push_back("axiom   status          checked  failures  first witness");
  for (const auto& e : report.entries) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-7s %-15s %7zu  %8zu  ", axiom_label(e.axiom).c_str(),
                  to_string(e.status).c_str(), e.checked, e.failures);
    o.lines.push_back(buf + (e.witnesses.empty() ? std::string("-") : e.witnesses.front().relation));
  }

  bool found = false;
  if (c.has("counterexample")) {
    const Json& cj = c.at("counterexample");
    reject_unknown_keys(cj, {"axioms", "budget", "strategy"}, "counterexample");
    CounterexampleOptions co;
    co.check = opt;
    if (cj.contains("axioms")) {
      const Json& aj = cj["axioms"];
      if (!aj.is_array()) fail(ErrorCode::config, "config key 'counterexample.axioms': expected an array");
      for (std::size_t i = 0; i < aj.size(); ++i) {
        const std::string p = "counterexample.axioms[" + std::to_string(i) + "]";
        co.axioms.push_back(aj[i].is_string() ? parse_axiom(aj[i].get<std::string>())
                                              : parse_axiom(std::to_string(read_count(aj[i], p))));
      }
    }
    co.budget = cj.contains("budget") ? read_count(cj["budget"], "counterexample.budget") : co.budget;
    if (cj.contains("strategy")) co.strategy = parse_strategy(read_string(cj["strategy"], "counterexample.strategy"));
    const CounterexampleResult cr = find_counterexample(space, co);
    Json cjson = to_json(space.universe(), cr);
    cjson["strategy"] = to_string(co.strategy);
    cjson["budget"] = co.budget;
    if (cr.witness) cjson["replays"] = replay_witness(space, *cr.witness, opt);
    o.results["counterexample"] = std::move(cjson);
    found = cr.witness.has_value();
    o.lines.push_back("counterexample search (" + to_string(co.strategy) + "): " +
                      (found ? "axiom " + axiom_label(cr.witness->axiom) + ": " + cr.witness->relation : cr.note));
  }

  std::string failed;
  for (int a : report.failed_axioms()) failed += (failed.empty() ? "" : ", ") + axiom_label(a);
  verdict(o, report.passed() && !found, "all eighteen axioms pass",
          failed.empty() ? "counterexample found" : "axioms failing: " + failed);
  return o;
}

// ---------------------------------------------------------------------------

Outcome cmd_topology(const Config& c) {
  const std::string task = c.string("task");
  Outcome o;
  if (task == "ball") {
    c.allow({"space", "task", "ball", "point", "samples", "seed", "scan_budget"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const OpenBall ball = ball_from_json(u, c.at("ball"), "ball");
    const Point b = point_from_json(u, c.at("point"), "point");
    InteriorBallOptions opt;
    opt.samples = c.count("samples", opt.samples);
    opt.seed = c.count("seed", 0);
    opt.scan_budget = c.count("scan_budget", opt.scan_budget);
    const bool inside = ball_contains(space, ball, b);
    o.results["ball"] = ball_to_json(u, ball);
    o.results["point"] = point_to_json(u, b);
    o.results["contains"] = inside;
    o.results["degrees"] = degrees_to_json(space.evaluate(ball.center, b, ball.lambda));
    if (!inside) {
      o.results["interior_ball"] = nullptr;
      o.lines.push_back("point lies outside the ball; no interior ball to build");
      verdict(o, false, "", "point is not in the ball");
      return o;
    }
    try {
      const InteriorBallResult r = interior_ball_witness(space, ball, b, opt);
      o.results["interior_ball"] = to_json(u, r);
      o.lines.push_back("interior ball O(" + u.label(b) + ", " + fmt(r.ball->epsilon) + ", " + fmt(r.ball->lambda) +
                        "), lambda0 = " + fmt(r.lambda0) + ", " + std::to_string(r.verified_points) +
                        " inner points checked (" + (r.exhaustive ? "exhaustive" : "sampled") + ")");
      if (r.exhaustive) o.qualifier = "exhaustive";
      verdict(o, !r.violation, "interior ball contained in the ball", "interior ball leaks out of the ball");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::search_failure) throw;
      o.results["interior_ball"] = nullptr;
      o.results["search_failure"] = e.what();
      verdict(o, false, "", e.what());
    }
    return o;
  }
  if (task == "hausdorff") {
    c.allow({"space", "task", "a", "b", "lambda", "samples", "seed"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    HausdorffOptions opt;
    opt.samples = c.count("samples", opt.samples);
    opt.seed = c.count("seed", 0);
    const HausdorffResult r = hausdorff_witness(space, point_from_json(u, c.at("a"), "a"),
                                                point_from_json(u, c.at("b"), "b"), c.positive("lambda"), opt);
    o.results["hausdorff"] = to_json(u, r);
    if (!r.applicable) {
      o.lines.push_back("not applicable: " + r.reason);
      verdict(o, false, "", "not applicable at this lambda");
      return o;
    }
    if (r.exhaustive) o.qualifier = "exhaustive";
    o.lines.push_back("balls of radius " + fmt(r.ball_a->epsilon) + " at scale " + fmt(r.ball_a->lambda) + ", " +
                      std::to_string(r.verified_points) + " points checked: " +
                      (r.disjoint() ? "disjoint" : "overlap"));
    verdict(o, r.disjoint(), "balls are disjoint", "balls share a point");
    return o;
  }
  if (task == "nb") {
    c.allow({"space", "task", "subset", "lambda_grid", "epsilon_grid", "centers", "epsilon", "lambda"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const auto subset = points_from_json(u, c.at("subset"), "subset");
    bool ok = true;
    bool ran = false;
    if (c.has("lambda_grid") || c.has("epsilon_grid") || !c.has("centers")) {
      ran = true;
      const auto pair = is_neutro_bounded(space, subset, c.lambda_grid(),
                                          c.epsilon_grid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}));
      o.results["bound"] = pair ? Json{{"lambda", pair->lambda}, {"epsilon", pair->epsilon}} : Json(nullptr);
      o.lines.push_back(pair ? "bounded at lambda = " + fmt(pair->lambda) + ", epsilon = " + fmt(pair->epsilon)
                             : "no grid pair bounds the subset");
      ok = ok && pair.has_value();
    }
    if (c.has("centers")) {
      ran = true;
      const NbCertificate cert = nb_certificate_via_cover(space, subset, points_from_json(u, c.at("centers"), "centers"),
                                                          c.unit("epsilon", 0.5), c.positive("lambda"));
      o.results["certificate"] = to_json(u, cert);
      o.lines.push_back(cert.zeta ? "certificate lambda0 = " + fmt(*cert.lambda0) + ", zeta = " + fmt(*cert.zeta) +
                                        (cert.verified ? " (verified on all pairs)" : " (fails on a pair)")
                                  : "no zeta in (0, 1) satisfies the folded bounds");
      ok = ok && cert.zeta && cert.verified;
    }
    (void)ran;
    o.qualifier = "exhaustive";
    verdict(o, ok, "subset is neutrosophic-bounded", "no boundedness certificate");
    return o;
  }
  if (task == "closure-lemma") {
    c.allow({"space", "task", "a", "epsilon1", "epsilon2", "lambda", "samples", "seed"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const ClosureCheckResult r = closure_containment_check(
        space, point_from_json(u, c.at("a"), "a"), c.unit("epsilon1", 0.5), c.unit("epsilon2", 0.5),
        c.positive("lambda"), c.count("samples", 2000), c.count("seed", 0));
    o.results["closure"] = to_json(u, r);
    if (r.exact) o.qualifier = "exhaustive";
    o.lines.push_back(r.regime + ", " + std::to_string(r.checked) + " closure points checked");
    verdict(o, r.holds, "closure lies in the larger ball", "closure point outside the larger ball");
    return o;
  }
  if (task == "finite-topology" || task == "baire") {
    if (task == "finite-topology")
      c.allow({"space", "task", "epsilon_grid", "lambda_grid", "subsets"});
    else
      c.allow({"space", "task", "epsilon_grid", "lambda_grid"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    if (!u.is_finite())
      fail(ErrorCode::precondition, "task '" + task + "' needs a finite universe, got " + to_string(u.kind()));
    const FiniteTopology top = generate_finite_topology(space, c.epsilon_grid({0.1, 0.5, 0.9}), c.lambda_grid());
    o.qualifier = "exhaustive";
    o.results["topology"] = to_json(top);
    o.lines.push_back(std::to_string(top.open_sets().size()) + " open sets on " + std::to_string(top.size()) +
                      " points" + (top.is_discrete() ? " (discrete)" : ""));
    if (task == "baire") {
      const BaireResult b = baire_probe(top);
      o.results["baire"] = to_json(top, b);
      o.lines.push_back(std::to_string(b.dense_open_count) + " dense open sets; intersection dense: " +
                        (b.dense ? "yes" : "no"));
      verdict(o, b.dense, "intersection of dense open sets is dense", "intersection of dense open sets is not dense");
      return o;
    }
    bool ok = top.reclosure_fixpoint();
    if (c.has("subsets")) {
      const Json& sj = c.at("subsets");
      if (!sj.is_array()) fail(ErrorCode::config, "config key 'subsets': expected an array of point arrays");
      Json out = Json::array();
      for (std::size_t i = 0; i < sj.size(); ++i) {
        std::uint64_t mask = 0;
        for (const auto& p : points_from_json(u, sj[i], "subsets[" + std::to_string(i) + "]"))
          mask |= std::uint64_t{1} << u.index_of(p);
        const NowhereDenseResult nd = is_nowhere_dense(top, mask);
        Json e = to_json(top, nd);
        e["subset"] = sj[i];
        out.push_back(std::move(e));
        ok = ok && nd.agree();
        o.lines.push_back("subset " + std::to_string(i) + ": nowhere dense " + (nd.lattice ? "yes" : "no") +
                          (nd.agree() ? "" : " (ball criterion disagrees)"));
      }
      o.results["nowhere_dense"] = std::move(out);
    }
    verdict(o, ok, "topology closed; nowhere-dense computations agree",
            "topology not closed or nowhere-dense computations disagree");
    return o;
  }
  if (task == "base") {
    c.allow({"space", "task", "dense_points", "depth"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const BasePrefix r =
        countable_base_prefix(space, points_from_json(u, c.at("dense_points"), "dense_points"), c.count("depth", 2));
    o.results["base"] = to_json(u, r);
    o.lines.push_back(std::to_string(r.balls.size()) + " balls" + (r.clamped ? ", radius 1 clamped to 1-1e-9" : ""));
    if (r.base_property) {
      o.qualifier = "exhaustive";
      o.lines.push_back(std::string("base property: ") + (*r.base_property ? "holds" : "fails"));
    }
    verdict(o, r.base_property.value_or(true), "family generated", "family is not a base");
    return o;
  }
  fail(ErrorCode::config, "config key 'task': unknown topology task '" + task +
                              "' (ball, hausdorff, nb, closure-lemma, finite-topology, baire, base)");
}

// ---------------------------------------------------------------------------

PointSequence sequence_from_json(const Universe& u, const Json& j, std::size_t n_max) {
  const std::string p = "sequence";
  if (j.contains("terms")) {
    reject_unknown_keys(j, {"terms"}, p);
    auto terms = points_from_json(u, j["terms"], p + ".terms");
    if (terms.empty()) fail(ErrorCode::config, "config key 'sequence.terms': must be non-empty");
    return PointSequence::from_terms("explicit", std::move(terms));
  }
  reject_unknown_keys(j, {"generator", "scale", "amplitude", "value", "start", "ratio", "length"}, p);
  const std::string g = read_string(require_key(j, "generator", p), p + ".generator");
  const std::size_t length = j.contains("length") ? read_count(j["length"], p + ".length") : n_max;
  auto num = [&](const char* k, double def) { return j.contains(k) ? read_number(j[k], p + "." + k) : def; };
  if (g == "constant")
    return PointSequence::constant(point_from_json(u, require_key(j, "value", p), p + ".value"), length);
  if (u.kind() != UniverseKind::real_vector)
    fail(ErrorCode::precondition, "generator '" + g + "' needs a real_vector universe");
  if (g == "harmonic") return PointSequence::harmonic(u.dimension(), num("scale", 1.0), length);
  if (g == "alternating") return PointSequence::alternating(u.dimension(), num("amplitude", 1.0), length);
  if (g == "geometric") return PointSequence::geometric(u.dimension(), num("start", 1.0), num("ratio", 0.5), length);
  fail(ErrorCode::config, "config key 'sequence.generator': unknown generator '" + g +
                              "' (harmonic, alternating, constant, geometric)");
}

SequenceOptions sequence_options(const Config& c) {
  SequenceOptions o;
  o.epsilon = c.unit("epsilon", o.epsilon);
  o.lambda_grid = c.lambda_grid(o.lambda_grid);
  o.n_max = c.count("n_max", o.n_max);
  o.min_tail_fraction = c.number("min_tail_fraction", o.min_tail_fraction);
  o.pair_budget = c.count("pair_budget", o.pair_budget);
  o.seed = c.count("seed", 0);
  return o;
}

std::string scale_line(const ConvergenceReport& r) {
  std::string s;
  for (const auto& v : r.scales)
    s += (s.empty() ? "" : ", ") + ("lambda " + fmt(v.lambda) + ": N = " + (v.n ? std::to_string(*v.n) : "none"));
  return s;
}

Outcome cmd_sequence(const Config& c) {
  const std::string task = c.string("task");
  Outcome o;
  const std::initializer_list<std::string_view> seq_keys{"space", "task", "sequence", "limit", "epsilon",
                                                         "lambda_grid", "n_max", "min_tail_fraction",
                                                         "pair_budget", "seed"};
  if (task == "converge" || task == "cauchy") {
    c.allow(seq_keys);
    if (task == "cauchy" && c.has("limit")) fail(ErrorCode::config, "unknown config key 'limit' for task cauchy");
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const SequenceOptions opt = sequence_options(c);
    if (!c.has("sequence")) fail(ErrorCode::config, "missing config key 'sequence'");
    const PointSequence seq = sequence_from_json(u, c.at("sequence"), opt.n_max);
    o.results["tail_cutoff"] = tail_cutoff(opt);
    ConvergenceReport r;
    if (task == "converge") {
      r = converges_to(space, seq, point_from_json(u, c.at("limit"), "limit"), opt);
      o.results["convergence"] = to_json(r);
      verdict(o, r.holds, "converges", "does not converge");
    } else {
      r = is_cauchy(space, seq, opt);
      o.results["cauchy"] = to_json(r);
      verdict(o, r.holds, "Cauchy", "not Cauchy");
    }
    o.lines.push_back(scale_line(r));
    return o;
  }
  if (task == "ndz") {
    c.allow({"space", "task", "family", "epsilon_grid", "lambda_grid"});
    const NmsSpace space = load_space(c);
    const Universe& u = space.universe();
    const Json& fj = c.at("family");
    if (!fj.is_array()) fail(ErrorCode::config, "config key 'family': expected an array of point arrays");
    NestedFamily family;
    for (std::size_t i = 0; i < fj.size(); ++i)
      family.push_back(points_from_json(u, fj[i], "family[" + std::to_string(i) + "]"));
    const NdzReport r = has_ndz(space, family, c.epsilon_grid({0.1}), c.lambda_grid());
    o.results["ndz"] = to_json(u, r);
    o.lines.push_back(std::string("NDZ: ") + (r.ndz ? "yes" : "no") + ", intersection has " +
                      std::to_string(r.intersection.size()) + " point(s)");
    verdict(o, r.ndz, "family has neutrosophic diameter zero", "family does not have diameter zero");
    return o;
  }
  if (task == "completeness") {
    c.allow({"space", "task", "trials", "seed", "epsilon", "lambda_grid", "n_max", "min_tail_fraction"});
    const NmsSpace space = load_space(c);
    SequenceOptions opt = sequence_options(c);
    if (!c.has("n_max")) opt.n_max = 200;
    const CompletenessReport r = completeness_probe(space, c.count("trials", 1000), opt);
    o.results["completeness"] = to_json(r);
    o.lines.push_back(std::to_string(r.trials) + " sequences, " + std::to_string(r.cauchy) + " Cauchy, " +
                      std::to_string(r.failures) + " without a limit");
    verdict(o, r.failures == 0, "every Cauchy sequence converged", "Cauchy sequence without a limit");
    return o;
  }
  if (task == "uniform") {
    c.allow({"space", "task", "function", "epsilon", "lambda_grid", "n_max", "min_tail_fraction", "continuity"});
    const NmsSpace space = load_space(c);
    const SequenceOptions opt = sequence_options(c);
    const Json& fj = c.at("function");
    reject_unknown_keys(fj, {"family", "grid_points"}, "function");
    const FunctionSequence f = FunctionSequence::named(
        read_string(require_key(fj, "family", "function"), "function.family"),
        fj.contains("grid_points") ? read_count(fj["grid_points"], "function.grid_points") : 21);
    const UniformReport r = uniform_convergence_check(space, f, opt);
    o.results["uniform"] = to_json(r);
    for (const auto& s : r.scales)
      o.lines.push_back("lambda " + fmt(s.lambda) + ": uniform N = " + (s.uniform_n ? std::to_string(*s.uniform_n) : "none"));
    if (!r.uniform) {
      o.lines.push_back(r.diagnosis);
      verdict(o, false, "", "not uniformly convergent: " + r.diagnosis);
      return o;
    }
    bool ok = true;
    if (c.has("continuity")) {
      const Json& cj = c.at("continuity");
      reject_unknown_keys(cj, {"points", "delta_grid", "approach_tol"}, "continuity");
      const ContinuityReport cr = limit_continuity_probe(
          space, f, r, read_numbers(require_key(cj, "points", "continuity"), "continuity.points"),
          cj.contains("delta_grid") ? read_numbers(cj["delta_grid"], "continuity.delta_grid")
                                    : std::vector<double>{0.1, 0.01, 1e-3, 1e-4, 1e-5},
          opt.lambda_grid, cj.contains("approach_tol") ? read_number(cj["approach_tol"], "continuity.approach_tol") : 1e-2);
      o.results["limit_continuity"] = to_json(cr);
      o.lines.push_back(std::string("limit continuity: ") + (cr.continuous ? "modulus shrinks to 0" : "modulus does not shrink"));
      ok = cr.continuous;
    }
    verdict(o, ok, "uniformly convergent", "limit fails the continuity probe");
    return o;
  }
  fail(ErrorCode::config, "config key 'task': unknown sequence task '" + task +
                              "' (converge, cauchy, ndz, completeness, uniform)");
}

// ---------------------------------------------------------------------------

NormKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "tnorm") return NormKind::tnorm;
  if (s == "tconorm") return NormKind::tconorm;
  fail(ErrorCode::config, "config key '" + path + "': expected 'tnorm' or 'tconorm'");
}

Outcome cmd_norms(const Config& c) {
  c.allow({"kernel", "kind", "samples", "seed", "tol", "slope_bound", "step", "residual", "diagonal"});
  if (!c.has("kernel") && !c.has("diagonal"))
    fail(ErrorCode::config, "missing config key 'kernel' (or 'diagonal')");
  Outcome o;
  bool ok = true;
  if (c.has("kernel")) {
    const std::string name = c.string("kernel");
    NormKernel k = name == "arithmetic_mean"
                       ? NormKernel::arithmetic_mean(c.has("kind") ? parse_kind(c.string("kind"), "kind") : NormKind::tnorm)
                       : NormKernel::builtin(name);
    if (c.has("kind") && parse_kind(c.string("kind"), "kind") != k.kind())
      fail(ErrorCode::config, "config key 'kind': kernel '" + name + "' is a " + std::string(to_string(k.kind())));
    NormVerifyOptions opt;
    opt.samples = c.count("samples", opt.samples);
    opt.seed = c.count("seed", 0);
    opt.tol = c.number("tol", opt.tol);
    opt.slope_bound = c.number("slope_bound", opt.slope_bound);
    opt.step = c.number("step", opt.step);
    const NormReport r = verify_norm_axioms(k, opt);
    o.results["verification"] = to_json(r);
    for (const auto& ch : r.checks)
      o.lines.push_back(ch.name + ": " + (ch.passed() ? "pass" : "FAIL") +
                        (ch.witnesses.empty() ? "" : "  " + ch.witnesses.front().relation));
    ok = r.passed();
    if (c.has("residual")) {
      const Json& rj = c.at("residual");
      reject_unknown_keys(rj, {"epsilon1", "epsilon2"}, "residual");
      const UnitValue e1(read_number(require_key(rj, "epsilon1", "residual"), "residual.epsilon1"));
      const UnitValue e2(read_number(require_key(rj, "epsilon2", "residual"), "residual.epsilon2"));
      const bool tn = k.kind() == NormKind::tnorm;
      const double x = tn ? tnorm_residual(k, e1, e2) : tconorm_residual(k, e1, e2);
      const std::string key = tn ? "epsilon3" : "epsilon4";
      o.results["residual"] = Json{{"epsilon1", e1.value()}, {"epsilon2", e2.value()}, {key, x}};
      o.lines.push_back("residual " + key + " = " + fmt(x));
    }
  } else if (c.has("residual")) {
    fail(ErrorCode::config, "config key 'residual': needs 'kernel'");
  }
  if (c.has("diagonal")) {
    const Json& dj = c.at("diagonal");
    reject_unknown_keys(dj, {"tnorm", "tconorm", "epsilon5"}, "diagonal");
    const NormPair pair = NormPair::named(dj.contains("tnorm") ? read_string(dj["tnorm"], "diagonal.tnorm") : "min",
                                          dj.contains("tconorm") ? read_string(dj["tconorm"], "diagonal.tconorm") : "max");
    const UnitValue e5(read_number(require_key(dj, "epsilon5", "diagonal"), "diagonal.epsilon5"));
    const auto [e6, e7] = diagonal_witness(pair, e5);
    o.results["diagonal"] = Json{{"tnorm", pair.tnorm().name()},
                                 {"tconorm", pair.tconorm().name()},
                                 {"epsilon5", e5.value()},
                                 {"epsilon6", e6.value()},
                                 {"epsilon7", e7.value()}};
    o.lines.push_back("diagonal epsilon6 = " + fmt(e6) + ", epsilon7 = " + fmt(e7));
  }
  verdict(o, ok, "norm conditions hold", "norm conditions violated");
  return o;
}

std::string error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config: return "config";
    case ErrorCode::domain: return "domain";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::no_solution: return "no_solution";
    case ErrorCode::search_failure: return "search_failure";
    case ErrorCode::capacity: return "capacity";
  }
  return "unknown";
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  return code == ErrorCode::no_solution || code == ErrorCode::search_failure ? exit_finding : exit_usage;
}

CommandResult run_command(std::string_view command, const Json& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult out;
  Json report{{"toolkit", kToolkitName},
              {"version", kToolkitVersion},
              {"schema", kReportSchema},
              {"command", std::string(command)},
              {"config", config}};
  std::string text = std::string(kToolkitName) + " " + std::string(command) + "\n";
  try {
    const Config c(config, std::string(command));
    Outcome o;
    if (command == "check-axioms") o = cmd_check_axioms(c);
    else if (command == "topology") o = cmd_topology(c);
    else if (command == "sequence") o = cmd_sequence(c);
    else if (command == "norms") o = cmd_norms(c);
    else fail(ErrorCode::config, "unknown command '" + std::string(command) + "' (check-axioms, topology, sequence, norms)");
    out.exit_code = o.exit_code;
    const std::string status = o.exit_code == exit_verified ? "verified" : "finding";
    report["verdict"] = Json{{"status", status}, {"qualifier", o.qualifier}, {"summary", o.summary}};
    report["exit_code"] = o.exit_code;
    report["results"] = std::move(o.results);
    for (const auto& l : o.lines) text += "  " + l + "\n";
    text += "verdict: " + status + " (" + o.qualifier + "): " + o.summary + "\n";
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    report["verdict"] = Json{{"status", out.exit_code == exit_usage ? "error" : "finding"},
                             {"qualifier", "none"},
                             {"summary", e.what()}};
    report["exit_code"] = out.exit_code;
    report["error"] = Json{{"code", error_name(e.code())}, {"message", e.what()}};
    text += std::string("error (") + error_name(e.code()) + "): " + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = exit_usage;
    report["verdict"] = Json{{"status", "error"}, {"qualifier", "none"}, {"summary", e.what()}};
    report["exit_code"] = out.exit_code;
    report["error"] = Json{{"code", "internal"}, {"message", e.what()}};
    text += std::string("error: ") + e.what() + "\n";
  }
  if (options.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["timing"] = Json{{"seconds", dt.count()}};
  }
  out.report = std::move(report);
  out.text = std::move(text);
  return out;
}

}  // namespace nmskit
