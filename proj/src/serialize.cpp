#include "nmskit/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::config, "config key '" + path + "': " + what);
}

bool all_scalars(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
}

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(k).dump() + ": ";
        write(v, out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (all_scalars(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Universe universe_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const std::string kind = read_string(require_key(j, "kind", path), path + ".kind");
  if (kind == "finite_labeled") {
    reject_unknown_keys(j, {"kind", "labels", "distances", "coordinates", "metric"}, path);
    const Json& lj = require_key(j, "labels", path);
    if (!lj.is_array() || lj.empty()) bad(path + ".labels", "expected a non-empty array of strings");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < lj.size(); ++i)
      labels.push_back(read_string(lj[i], path + ".labels[" + std::to_string(i) + "]"));
    auto matrix = [&](const char* key) {
      const Json& mj = j.at(key);
      const std::string p = path + "." + key;
      if (!mj.is_array()) bad(p, "expected an array of rows");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < mj.size(); ++i) rows.push_back(read_numbers(mj[i], p + "[" + std::to_string(i) + "]"));
      return rows;
    };
    if (j.contains("distances") && j.contains("coordinates"))
      bad(path, "give either 'distances' or 'coordinates', not both");
    if (j.contains("distances")) {
      if (j.contains("metric")) bad(path + ".metric", "only meaningful with 'coordinates'");
      return Universe::finite(std::move(labels), matrix("distances"));
    }
    if (j.contains("coordinates")) {
      BaseMetric m = BaseMetric::euclidean;
      if (j.contains("metric")) m = parse_metric(read_string(j["metric"], path + ".metric"));
      return Universe::from_coordinates(std::move(labels), matrix("coordinates"), m);
    }
    if (j.contains("metric")) bad(path + ".metric", "only meaningful with 'coordinates'");
    return Universe::finite_labels(std::move(labels));
  }
  if (kind == "real_vector") {
    reject_unknown_keys(j, {"kind", "dimension", "metric", "box"}, path);
    const std::size_t dim = j.contains("dimension") ? read_count(j["dimension"], path + ".dimension") : 1;
    if (dim == 0) bad(path + ".dimension", "must be >= 1");
    BaseMetric m = BaseMetric::euclidean;
    if (j.contains("metric")) m = parse_metric(read_string(j["metric"], path + ".metric"));
    double lo = 0.0, hi = 1.0;
    if (j.contains("box")) {
      const auto box = read_numbers(j["box"], path + ".box");
      if (box.size() != 2 || !(box[0] < box[1])) bad(path + ".box", "expected [lo, hi] with lo < hi");
      lo = box[0];
      hi = box[1];
    }
    return Universe::real_vector(dim, m, lo, hi);
  }
  if (kind == "naturals") {
    reject_unknown_keys(j, {"kind", "bound"}, path);
    return Universe::naturals(read_count(require_key(j, "bound", path), path + ".bound"));
  }
  bad(path + ".kind", "unknown universe kind '" + kind + "' (finite_labeled, real_vector, naturals)");
}

NormKernel kernel_from_name(const std::string& name, NormKind kind) {
  if (name == "arithmetic_mean") return NormKernel::arithmetic_mean(kind);
  return NormKernel::builtin(name);
}

}  // namespace

std::string dump_stable(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      fail(ErrorCode::config, "unknown config key '" + (path.empty() ? k : path + "." + k) + "'");
  }
}

const Json& require_key(const Json& obj, const std::string& key, const std::string& path) {
  const std::string full = path.empty() ? key : path + "." + key;
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorCode::config, "missing config key '" + full + "'");
  return obj.at(key);
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(path, "expected a finite number");
  return x;
}

std::size_t read_count(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (x >= 0 && x <= 9.007199254740992e15 && std::floor(x) == x) return static_cast<std::size_t>(x);
  }
  bad(path, "expected a non-negative integer");
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

bool read_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected true or false");
  return j.get<bool>();
}

std::vector<double> read_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

NmsSpace space_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  reject_unknown_keys(j, {"name", "universe", "construction", "tnorm", "tconorm", "force", "table"}, path);
  if (j.contains("name")) read_string(j["name"], path + ".name");
  Universe u = universe_from_json(require_key(j, "universe", path), path + ".universe");

  std::string construction = u.kind() == UniverseKind::naturals ? "naturals" : "standard";
  if (j.contains("construction")) construction = read_string(j["construction"], path + ".construction");
  const std::string tn = j.contains("tnorm") ? read_string(j["tnorm"], path + ".tnorm") : "min";
  const std::string tc = j.contains("tconorm") ? read_string(j["tconorm"], path + ".tconorm") : "max";
  const bool force = j.contains("force") && read_bool(j["force"], path + ".force");

  auto kernel = [&](const std::string& name, NormKind kind, const std::string& key) {
    try {
      return kernel_from_name(name, kind);
    } catch (const Error& e) {
      bad(path + "." + key, e.what());
    }
  };
  const NormKernel tnk = kernel(tn, NormKind::tnorm, "tnorm");
  const NormKernel tck = kernel(tc, NormKind::tconorm, "tconorm");
  if (tnk.kind() != NormKind::tnorm) bad(path + ".tnorm", "'" + tn + "' is a t-conorm");
  if (tck.kind() != NormKind::tconorm) bad(path + ".tconorm", "'" + tc + "' is a t-norm");
  NormPair norms(tnk, tck, force);

  if (construction != "tabulated" && j.contains("table"))
    bad(path + ".table", "only used by the tabulated construction");
  if (construction == "standard") return standard_from_metric(std::move(u), std::move(norms));
  if (construction == "naturals") {
    require(u.kind() == UniverseKind::naturals, ErrorCode::precondition,
            "the naturals construction needs a naturals universe");
    return naturals_example(u.bound(), std::move(norms));
  }
  if (construction == "tabulated") {
    const std::string tp = path + ".table";
    const Json& tj = require_key(j, "table", path);
    reject_unknown_keys(tj, {"lambda", "entries"}, tp);
    DegreeTable table;
    table.lambdas = read_numbers(require_key(tj, "lambda", tp), tp + ".lambda");
    const Json& ej = require_key(tj, "entries", tp);
    if (!ej.is_array()) bad(tp + ".entries", "expected an array");
    for (std::size_t k = 0; k < ej.size(); ++k) {
      const std::string p = tp + ".entries[" + std::to_string(k) + "]";
      reject_unknown_keys(ej[k], {"pair", "degrees"}, p);
      const auto pair = points_from_json(u, require_key(ej[k], "pair", p), p + ".pair");
      if (pair.size() != 2) bad(p + ".pair", "expected two points");
      std::size_t i = u.index_of(pair[0]), jj = u.index_of(pair[1]);
      if (i > jj) std::swap(i, jj);
      const Json& dj = require_key(ej[k], "degrees", p);
      if (!dj.is_array() || dj.size() != table.lambdas.size())
        bad(p + ".degrees", "expected one [G, B, Y] triple per lambda knot");
      std::vector<DegreesTriple> row;
      for (std::size_t m = 0; m < dj.size(); ++m) {
        const auto t = read_numbers(dj[m], p + ".degrees[" + std::to_string(m) + "]");
        if (t.size() != 3) bad(p + ".degrees[" + std::to_string(m) + "]", "expected [G, B, Y]");
        row.push_back(make_degrees(t[0], t[1], t[2]));
      }
      if (!table.entries.emplace(std::make_pair(i, jj), std::move(row)).second)
        bad(p + ".pair", "duplicate pair");
    }
    return tabulated_space(std::move(u), std::move(norms), std::move(table));
  }
  bad(path + ".construction", "unknown construction '" + construction + "' (standard, naturals, tabulated)");
}

Point point_from_json(const Universe& u, const Json& j, const std::string& path) {
  Point p;
  switch (u.kind()) {
    case UniverseKind::finite_labeled:
      try {
        return u.point_by_label(read_string(j, path));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::config) throw;
        bad(path, e.what());
      }
    case UniverseKind::naturals:
      p.coords = {static_cast<double>(read_count(j, path))};
      break;
    case UniverseKind::real_vector:
      if (j.is_number() && u.dimension() == 1)
        p.coords = {read_number(j, path)};
      else
        p.coords = read_numbers(j, path);
      break;
  }
  if (!u.contains(p)) bad(path, "point outside the " + to_string(u.kind()) + " universe");
  return p;
}

std::vector<Point> points_from_json(const Universe& u, const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(u, j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

OpenBall ball_from_json(const Universe& u, const Json& j, const std::string& path) {
  reject_unknown_keys(j, {"center", "epsilon", "lambda"}, path);
  OpenBall b;
  b.center = point_from_json(u, require_key(j, "center", path), path + ".center");
  b.epsilon = read_number(require_key(j, "epsilon", path), path + ".epsilon");
  b.lambda = read_number(require_key(j, "lambda", path), path + ".lambda");
  if (!(b.epsilon > 0.0 && b.epsilon < 1.0)) bad(path + ".epsilon", "must lie in (0, 1)");
  if (!(b.lambda > 0.0)) bad(path + ".lambda", "must be positive");
  return b;
}

// ---------------------------------------------------------------------------

Json point_to_json(const Universe& u, const Point& p) {
  switch (u.kind()) {
    case UniverseKind::finite_labeled: return u.label(p);
    case UniverseKind::naturals: return static_cast<std::uint64_t>(p.coords.at(0));
    case UniverseKind::real_vector:
      if (p.coords.size() == 1) return p.coords[0];
      return Json(p.coords);
  }
  return nullptr;
}

Json points_to_json(const Universe& u, const std::vector<Point>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(point_to_json(u, p));
  return a;
}

Json degrees_to_json(const DegreesTriple& d) { return Json{{"G", d.g}, {"B", d.b}, {"Y", d.y}}; }

Json ball_to_json(const Universe& u, const OpenBall& b) {
  return Json{{"center", point_to_json(u, b.center)}, {"epsilon", b.epsilon}, {"lambda", b.lambda}};
}

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const NormReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json w = Json::array();
    for (const auto& x : c.witnesses)
      w.push_back(Json{{"sample", x.sample},
                       {"s", x.s},
                       {"t", x.t},
                       {"u", x.u},
                       {"v", x.v},
                       {"lhs", x.lhs},
                       {"rhs", x.rhs},
                       {"relation", x.relation}});
    checks.push_back(Json{{"check", c.name},
                          {"evaluated", c.evaluated},
                          {"failures", c.failures},
                          {"passed", c.passed()},
                          {"witnesses", std::move(w)}});
  }
  return Json{{"kernel", r.kernel},
              {"kind", std::string(to_string(r.kind))},
              {"samples", r.options.samples},
              {"seed", r.options.seed},
              {"tol", r.options.tol},
              {"slope_bound", r.options.slope_bound},
              {"step", r.options.step},
              {"corner_probes", r.corner_probes},
              {"passed", r.passed()},
              {"witness_count", r.witness_count()},
              {"checks", std::move(checks)}};
}

Json to_json(const Universe& u, const Witness& w) {
  Json degrees = Json::array();
  for (const auto& d : w.degrees) degrees.push_back(degrees_to_json(d));
  return Json{{"axiom", axiom_label(w.axiom)},
              {"check", w.check},
              {"sample", w.sample},
              {"points", points_to_json(u, w.points)},
              {"scales", w.scales},
              {"degrees", std::move(degrees)},
              {"lhs", w.lhs},
              {"rhs", w.rhs},
              {"relation", w.relation}};
}

Json to_json(const Universe& u, const AxiomReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json w = Json::array();
    for (const auto& x : e.witnesses) w.push_back(to_json(u, x));
    entries.push_back(Json{{"axiom", axiom_label(e.axiom)},
                           {"status", to_string(e.status)},
                           {"checked", e.checked},
                           {"failures", e.failures},
                           {"witnesses", std::move(w)}});
  }
  Json failed = Json::array();
  for (int a : r.failed_axioms()) failed.push_back(axiom_label(a));
  const auto& o = r.options;
  return Json{{"sampling",
               {{"samples", o.samples},
                {"seed", o.seed},
                {"lambda_grid", o.lambda_grid},
                {"tol", o.tol},
                {"limit_tol", o.limit_tol},
                {"lambda_max", o.lambda_max},
                {"fd_step", o.fd_step},
                {"slope_bound", o.slope_bound}}},
              {"passed", r.passed()},
              {"failed_axioms", std::move(failed)},
              {"axioms", std::move(entries)},
              {"norm_inputs_out_of_range", r.norm_inputs_out_of_range},
              {"notes", r.notes}};
}

Json to_json(const Universe& u, const CounterexampleResult& r) {
  return Json{{"found", r.witness.has_value()},
              {"witness", r.witness ? to_json(u, *r.witness) : Json(nullptr)},
              {"evaluations", r.evaluations},
              {"probes", r.probes},
              {"note", r.note}};
}

Json to_json(const Universe& u, const InteriorBallResult& r) {
  return Json{{"ball", r.ball ? ball_to_json(u, *r.ball) : Json(nullptr)},
              {"lambda0", r.lambda0},
              {"epsilon0", r.e0},
              {"zeta", r.zeta},
              {"epsilon1", r.e1},
              {"epsilon2", r.e2},
              {"epsilon3", r.e3},
              {"epsilon4", r.e4},
              {"scale_probes", r.scanned},
              {"verification", r.exhaustive ? "exhaustive" : "sampled"},
              {"inner_points_checked", r.verified_points},
              {"contained", !r.violation.has_value()},
              {"violation", r.violation ? point_to_json(u, *r.violation) : Json(nullptr)}};
}

Json to_json(const Universe& u, const HausdorffResult& r) {
  Json j{{"applicable", r.applicable}, {"degrees", degrees_to_json(r.degrees)}};
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["epsilon"] = r.epsilon;
  j["epsilon0"] = r.e0;
  j["epsilon4"] = r.e4;
  j["epsilon5"] = r.e5;
  j["epsilon6"] = r.e6;
  j["epsilon7"] = r.e7;
  j["ball_a"] = ball_to_json(u, *r.ball_a);
  j["ball_b"] = ball_to_json(u, *r.ball_b);
  j["verification"] = r.exhaustive ? "exhaustive" : "sampled";
  j["points_checked"] = r.verified_points;
  j["disjoint"] = r.disjoint();
  j["shared_point"] = r.shared ? point_to_json(u, *r.shared) : Json(nullptr);
  return j;
}

Json to_json(const Universe& u, const NbCertificate& r) {
  Json j{{"rho", r.rho},       {"sigma", r.sigma},       {"phi", r.phi},
         {"fold_G", r.fold_g}, {"fold_B", r.fold_b},     {"fold_Y", r.fold_y},
         {"lambda0", opt(r.lambda0)}, {"zeta", opt(r.zeta)}, {"verified", r.verified}};
  j["violation"] = r.violation ? points_to_json(u, {r.violation->first, r.violation->second}) : Json(nullptr);
  return j;
}

namespace {

Json label_set(const FiniteTopology& t, std::uint64_t set) {
  auto m = t.members(set);
  std::sort(m.begin(), m.end());
  return Json(m);
}

}  // namespace

Json to_json(const FiniteTopology& t) {
  std::vector<std::vector<std::string>> sets;
  for (std::uint64_t s : t.open_sets()) {
    auto m = t.members(s);
    std::sort(m.begin(), m.end());
    sets.push_back(std::move(m));
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  Json hoods = Json::object();
  for (std::size_t i = 0; i < t.size(); ++i) hoods[t.labels()[i]] = label_set(t, t.neighborhoods()[i]);
  return Json{{"points", t.labels()},
              {"base_size", t.base().size()},
              {"open_set_count", t.open_sets().size()},
              {"discrete", t.is_discrete()},
              {"reclosure_fixpoint", t.reclosure_fixpoint()},
              {"minimal_neighborhoods", std::move(hoods)},
              {"open_sets", Json(sets)}};
}

Json to_json(const FiniteTopology& t, const NowhereDenseResult& r) {
  return Json{{"closure", label_set(t, r.closure)},
              {"interior_of_closure", label_set(t, r.interior_of_closure)},
              {"nowhere_dense_lattice", r.lattice},
              {"nowhere_dense_ball_criterion", r.ball_criterion},
              {"agree", r.agree()},
              {"blocking_open_set",
               r.blocking_open_set ? label_set(t, *r.blocking_open_set) : Json(nullptr)}};
}

Json to_json(const FiniteTopology& t, const BaireResult& r) {
  return Json{{"dense_open_count", r.dense_open_count},
              {"intersection", label_set(t, r.intersection)},
              {"intersection_dense", r.dense}};
}

Json to_json(const Universe& u, const BasePrefix& r) {
  Json balls = Json::array();
  for (const auto& b : r.balls) balls.push_back(ball_to_json(u, b));
  return Json{{"count", r.balls.size()},
              {"radius_clamped", r.clamped},
              {"base_property", opt(r.base_property)},
              {"uncovered", r.uncovered},
              {"balls", std::move(balls)}};
}

Json to_json(const Universe& u, const ClosureCheckResult& r) {
  return Json{{"holds", r.holds},
              {"regime", r.regime},
              {"exact", r.exact},
              {"points_checked", r.checked},
              {"witness", r.witness ? point_to_json(u, *r.witness) : Json(nullptr)}};
}

Json to_json(const ConvergenceReport& r) {
  Json scales = Json::array();
  for (const auto& s : r.scales)
    scales.push_back(Json{{"lambda", s.lambda},
                          {"N", opt(s.n)},
                          {"last_violation", opt(s.last_violation)},
                          {"violation_degrees",
                           s.violation_degrees ? degrees_to_json(*s.violation_degrees) : Json(nullptr)}});
  return Json{{"holds", r.holds}, {"regime", r.regime}, {"pairs_checked", r.pairs_checked}, {"scales", std::move(scales)}};
}

Json to_json(const Universe& u, const NdzReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"epsilon", e.epsilon}, {"lambda", e.lambda}, {"N", opt(e.n)}});
  return Json{{"ndz", r.ndz}, {"entries", std::move(entries)}, {"intersection", points_to_json(u, r.intersection)}};
}

Json to_json(const CompletenessReport& r) {
  return Json{{"trials", r.trials},
              {"cauchy", r.cauchy},
              {"convergent", r.convergent},
              {"failures", r.failures},
              {"first_failure", opt(r.first_failure)},
              {"note", r.scale_note}};
}

Json to_json(const UniformReport& r) {
  Json scales = Json::array();
  for (const auto& s : r.scales) {
    Json pts = Json::array();
    for (const auto& p : s.pointwise) pts.push_back(Json{{"x", p.x}, {"N", opt(p.n)}});
    scales.push_back(Json{{"lambda", s.lambda}, {"uniform_N", opt(s.uniform_n)}, {"pointwise", std::move(pts)}});
  }
  return Json{{"uniform", r.uniform},
              {"divergence_point", opt(r.divergence_point)},
              {"diagnosis", r.diagnosis},
              {"scales", std::move(scales)}};
}

Json to_json(const ContinuityReport& r) {
  Json rows = Json::array();
  for (const auto& m : r.table)
    rows.push_back(Json{{"point", m.point}, {"delta", m.delta}, {"lambda", m.lambda}, {"worst", degrees_to_json(m.worst)}, {"gap", m.gap}});
  return Json{{"continuous", r.continuous}, {"modulus", std::move(rows)}};
}

}  // namespace nmskit
