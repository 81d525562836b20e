#include "nmskit/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

constexpr std::array<const char*, kAxiomCount> kRoman{
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix",
    "x", "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii"};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

enum class Comp { g, b, y };

// Axioms iii..vii concern G, viii..xii B, xiii..xvii Y; each block of five is
// (identity, symmetry, triangle, continuity, limit).
Comp component_of(int axiom) {
  if (axiom >= 3 && axiom <= 7) return Comp::g;
  if (axiom >= 8 && axiom <= 12) return Comp::b;
  return Comp::y;
}

int block_offset(int axiom) { return (axiom - 3) % 5; }

double pick(const DegreesTriple& d, Comp c) {
  switch (c) {
    case Comp::g: return d.g;
    case Comp::b: return d.b;
    case Comp::y: return d.y;
  }
  return 0.0;
}

const char* name_of(Comp c) {
  switch (c) {
    case Comp::g: return "G";
    case Comp::b: return "B";
    case Comp::y: return "Y";
  }
  return "?";
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

void validate(const AxiomCheckOptions& o) {
  require(o.samples >= 1, ErrorCode::invalid_argument, "samples must be >= 1");
  require(!o.lambda_grid.empty(), ErrorCode::invalid_argument, "lambda grid must be non-empty");
  for (std::size_t i = 0; i < o.lambda_grid.size(); ++i) {
    require(std::isfinite(o.lambda_grid[i]) && o.lambda_grid[i] > 0.0, ErrorCode::invalid_argument,
            "lambda grid values must be positive");
    require(i == 0 || o.lambda_grid[i] >= o.lambda_grid[i - 1], ErrorCode::invalid_argument,
            "lambda grid must be sorted");
  }
  require(o.tol >= 0.0 && o.limit_tol >= 0.0, ErrorCode::invalid_argument, "tolerances must be >= 0");
  require(o.fd_step > 0.0 && o.slope_bound > 0.0, ErrorCode::invalid_argument,
          "finite-difference step and slope bound must be positive");
  require(o.lambda_max > 0.0, ErrorCode::invalid_argument, "lambda_max must be positive");
}

// Runs individual axiom probes against one space and counts evaluations.
class Prober {
 public:
  Prober(const NmsSpace& space, const AxiomCheckOptions& options)
      : space_(space), opt_(options) {}

  std::size_t evaluations = 0;
  std::size_t norm_inputs_out_of_range = 0;

  DegreesTriple eval(const Point& a, const Point& b, double lambda) {
    ++evaluations;
    return space_.evaluate(a, b, lambda);
  }

  std::string label(const Point& p) const { return space_.universe().label(p); }

  std::optional<Witness> range(const Point& a, const Point& b, double lambda) {
    const DegreesTriple d = eval(a, b, lambda);
    for (Comp c : {Comp::g, Comp::b, Comp::y}) {
      const double v = pick(d, c);
      if (v < -opt_.tol || v > 1.0 + opt_.tol) {
        return make(1, "range", {a, b}, {lambda}, {d}, v, v > 1.0 ? 1.0 : 0.0,
                    std::string(name_of(c)) + "(" + label(a) + ", " + label(b) + ", " + fmt(lambda) +
                        ") = " + fmt(v) + (v > 1.0 ? " > 1" : " < 0"));
      }
    }
    return std::nullopt;
  }

  std::optional<Witness> sum(const Point& a, const Point& b, double lambda) {
    const DegreesTriple d = eval(a, b, lambda);
    const double s = d.g + d.b + d.y;
    if (s <= 3.0 + opt_.tol) return std::nullopt;
    return make(2, "sum", {a, b}, {lambda}, {d}, s, 3.0, "G + B + Y = " + fmt(s) + " > 3");
  }

  // a = b must give G = 1, B = 0, Y = 0 (within tol).
  std::optional<Witness> identity_forward(int axiom, const Point& a, double lambda) {
    const Comp c = component_of(axiom);
    const DegreesTriple d = eval(a, a, lambda);
    const double v = pick(d, c);
    const double want = c == Comp::g ? 1.0 : 0.0;
    if (std::abs(v - want) <= opt_.tol) return std::nullopt;
    return make(axiom, "identity_forward", {a}, {lambda}, {d}, v, want,
                std::string(name_of(c)) + "(a, a, " + fmt(lambda) + ") = " + fmt(v) + " != " + fmt(want));
  }

  // a != b must not give the coincidence value. Compared exactly: any
  // representable separation counts.
  std::optional<Witness> identity_reverse(int axiom, const Point& a, const Point& b, double lambda) {
    if (a == b) return std::nullopt;
    const Comp c = component_of(axiom);
    const DegreesTriple d = eval(a, b, lambda);
    const double v = pick(d, c);
    const double coincide = c == Comp::g ? 1.0 : 0.0;
    if (v != coincide) return std::nullopt;
    return make(axiom, "identity_reverse", {a, b}, {lambda}, {d}, v, coincide,
                std::string(name_of(c)) + "(" + label(a) + ", " + label(b) + ", " + fmt(lambda) +
                    ") = " + fmt(v) + " for distinct points");
  }

  std::optional<Witness> symmetry(int axiom, const Point& a, const Point& b, double lambda) {
    const Comp c = component_of(axiom);
    const DegreesTriple ab = eval(a, b, lambda), ba = eval(b, a, lambda);
    const double x = pick(ab, c), y = pick(ba, c);
    if (x == y) return std::nullopt;
    return make(axiom, "symmetry", {a, b}, {lambda}, {ab, ba}, x, y,
                std::string(name_of(c)) + "(a, b) = " + fmt(x) + " != " + fmt(y) + " = " + name_of(c) +
                    "(b, a)");
  }

  std::optional<Witness> triangle(int axiom, const Point& a, const Point& b, const Point& c,
                                  double lambda, double mu) {
    const Comp comp = component_of(axiom);
    const DegreesTriple ab = eval(a, b, lambda), bc = eval(b, c, mu), ac = eval(a, c, lambda + mu);
    const double x = pick(ab, comp), y = pick(bc, comp), z = pick(ac, comp);
    if (!in_unit(x) || !in_unit(y)) ++norm_inputs_out_of_range;
    const bool is_g = comp == Comp::g;
    const NormKernel& k = is_g ? space_.norms().tnorm() : space_.norms().tconorm();
    const double folded = k.raw(x, y);
    const bool ok = is_g ? folded <= z + opt_.tol : folded >= z - opt_.tol;
    if (ok) return std::nullopt;
    const std::string n = name_of(comp);
    const std::string op = is_g ? " o " : " * ";
    return make(axiom, "triangle", {a, b, c}, {lambda, mu}, {ab, bc, ac}, folded, z,
                n + "(" + label(a) + ", " + label(b) + ", " + fmt(lambda) + ")" + op + n + "(" + label(b) +
                    ", " + label(c) + ", " + fmt(mu) + ") = " + k.name() + "(" + fmt(x) + ", " + fmt(y) +
                    ") = " + fmt(folded) + (is_g ? " > " : " < ") + fmt(z) + " = " + n + "(" + label(a) +
                    ", " + label(c) + ", " + fmt(lambda + mu) + ")");
  }

  // Finite-difference continuity in lambda. A difference above the slope
  // bound is accepted when it keeps shrinking under step refinement (steep
  // but continuous); a difference that does not shrink is reported.
  std::optional<Witness> continuity(int axiom, const Point& a, const Point& b, double lambda,
                                    double h) {
    const Comp c = component_of(axiom);
    const DegreesTriple base = eval(a, b, lambda);
    const double f0 = pick(base, c);
    for (double dir : {1.0, -1.0}) {
      if (dir < 0.0 && lambda - h <= 0.0) continue;
      const double d1 = std::abs(pick(eval(a, b, lambda + dir * h), c) - f0);
      if (d1 <= opt_.slope_bound * h + opt_.tol) continue;
      const double d2 = std::abs(pick(eval(a, b, lambda + dir * h / 10.0), c) - f0);
      const double d3 = std::abs(pick(eval(a, b, lambda + dir * h / 100.0), c) - f0);
      if (d2 <= 0.5 * d1 && d3 <= 0.5 * d2) continue;
      return make(axiom, "continuity", {a, b}, {lambda, h}, {base}, d3, opt_.slope_bound * h / 100.0,
                  "|" + std::string(name_of(c)) + "(" + fmt(lambda) + (dir > 0 ? " + " : " - ") +
                      "h) - " + name_of(c) + "(" + fmt(lambda) + ")| = " + fmt(d1) + ", " + fmt(d2) +
                      ", " + fmt(d3) + " for h = " + fmt(h) + ", h/10, h/100 (no shrinkage)");
    }
    return std::nullopt;
  }

  std::vector<double> limit_ladder() const {
    std::vector<double> ladder;
    double l = opt_.lambda_grid.back();
    while (l < opt_.lambda_max) {
      ladder.push_back(l);
      l *= 10.0;
    }
    ladder.push_back(opt_.lambda_max);
    return ladder;
  }

  // Tail value at the last rung within limit_tol, plus a monotone trend.
  std::optional<Witness> limit(int axiom, const Point& a, const Point& b,
                               const std::vector<double>& ladder) {
    const Comp c = component_of(axiom);
    std::vector<DegreesTriple> ds;
    ds.reserve(ladder.size());
    for (double l : ladder) ds.push_back(eval(a, b, l));
    const std::string n = name_of(c);
    for (std::size_t k = 0; k + 1 < ds.size(); ++k) {
      const double x = pick(ds[k], c), y = pick(ds[k + 1], c);
      const bool ok = c == Comp::g ? y >= x - opt_.tol : y <= x + opt_.tol;
      if (!ok)
        return make(axiom, "limit_trend", {a, b}, ladder, ds, y, x,
                    n + " moves away from its limit between lambda = " + fmt(ladder[k]) + " (" + fmt(x) +
                        ") and " + fmt(ladder[k + 1]) + " (" + fmt(y) + ")");
    }
    const double tail = pick(ds.back(), c);
    const double gap = c == Comp::g ? std::abs(tail - 1.0) : tail;
    if (gap <= opt_.limit_tol) return std::nullopt;
    return make(axiom, "limit_tail", {a, b}, ladder, ds, tail, c == Comp::g ? 1.0 : 0.0,
                n + "(" + label(a) + ", " + label(b) + ", " + fmt(ladder.back()) + ") = " + fmt(tail) +
                    ", off its limit by " + fmt(gap) + " > " + fmt(opt_.limit_tol));
  }

  std::optional<Witness> clamp(const Point& a, const Point& b, double lambda) {
    const DegreesTriple d = eval(a, b, lambda);
    if (d.g == 0.0 && d.b == 1.0 && d.y == 1.0) return std::nullopt;
    return make(18, "clamp", {a, b}, {lambda}, {d}, d.g, 0.0,
                "degrees at lambda = " + fmt(lambda) + " are (" + fmt(d.g) + ", " + fmt(d.b) + ", " +
                    fmt(d.y) + "), expected (0, 1, 1)");
  }

 private:
  static std::optional<Witness> make(int axiom, std::string check, std::vector<Point> points,
                                     std::vector<double> scales, std::vector<DegreesTriple> degrees,
                                     double lhs, double rhs, std::string relation) {
    Witness w;
    w.axiom = axiom;
    w.check = std::move(check);
    w.points = std::move(points);
    w.scales = std::move(scales);
    w.degrees = std::move(degrees);
    w.lhs = lhs;
    w.rhs = rhs;
    w.relation = std::move(relation);
    return w;
  }

  const NmsSpace& space_;
  const AxiomCheckOptions& opt_;
};

// Random arguments for each axiom family.
class Sampler {
 public:
  Sampler(const NmsSpace& space, const AxiomCheckOptions& options)
      : universe_(space.universe()), grid_(options.lambda_grid) {}

  Point point(Rng& rng) const { return universe_.sample(rng); }

  std::optional<Point> other(Rng& rng, const Point& a) const {
    if (universe_.is_finite() && universe_.size() < 2) return std::nullopt;
    for (int tries = 0; tries < 64; ++tries) {
      Point b = universe_.sample(rng);
      if (!(b == a)) return b;
    }
    return std::nullopt;
  }

  // Every fourth draw is a grid knot; the rest are log-uniform over the hull.
  double lambda(Rng& rng, std::size_t k) const {
    if (k % 4 == 0) return grid_[(k / 4) % grid_.size()];
    return rng.log_uniform(grid_.front(), grid_.back());
  }

 private:
  const Universe& universe_;
  const std::vector<double>& grid_;
};

std::optional<Witness> random_probe(Prober& p, const Sampler& s, Rng& rng, int axiom, std::size_t k,
                                    const AxiomCheckOptions& o) {
  if (axiom == 1 || axiom == 2) {
    const Point a = s.point(rng), b = s.point(rng);
    const double l = s.lambda(rng, k);
    return axiom == 1 ? p.range(a, b, l) : p.sum(a, b, l);
  }
  if (axiom == 18) {
    const Point a = s.point(rng), b = s.point(rng);
    const double l = k % 3 == 0 ? 0.0 : -s.lambda(rng, k);
    return p.clamp(a, b, l);
  }
  switch (block_offset(axiom)) {
    case 0: {
      const Point a = s.point(rng);
      const double l = s.lambda(rng, k / 2);
      if (k % 2 == 0) return p.identity_forward(axiom, a, l);
      const auto b = s.other(rng, a);
      if (!b) return std::nullopt;
      return p.identity_reverse(axiom, a, *b, l);
    }
    case 1: {
      const Point a = s.point(rng), b = s.point(rng);
      return p.symmetry(axiom, a, b, s.lambda(rng, k));
    }
    case 2: {
      const Point a = s.point(rng), b = s.point(rng), c = s.point(rng);
      const double l = s.lambda(rng, k), m = rng.log_uniform(o.lambda_grid.front(), o.lambda_grid.back());
      return p.triangle(axiom, a, b, c, l, m);
    }
    case 3: {
      const Point a = s.point(rng), b = s.point(rng);
      return p.continuity(axiom, a, b, s.lambda(rng, k), o.fd_step);
    }
    default: {
      const Point a = s.point(rng);
      const auto b = s.other(rng, a);
      if (!b) return std::nullopt;
      return p.limit(axiom, a, *b, p.limit_ladder());
    }
  }
}

AxiomStatus pass_status(int axiom) {
  if (axiom == 4 || axiom == 9 || axiom == 14) return AxiomStatus::structural;
  if (axiom >= 3 && axiom <= 17 && block_offset(axiom) >= 3) return AxiomStatus::probe_limited;
  return AxiomStatus::pass;
}

}  // namespace

std::string axiom_label(int axiom) {
  require(axiom >= 1 && axiom <= kAxiomCount, ErrorCode::invalid_argument,
          "axiom number must lie in 1..18");
  return kRoman[static_cast<std::size_t>(axiom - 1)];
}

int parse_axiom(const std::string& text) {
  for (int i = 0; i < kAxiomCount; ++i)
    if (text == kRoman[static_cast<std::size_t>(i)]) return i + 1;
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1 && n <= kAxiomCount) return n;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::config, "unknown axiom '" + text + "'");
}

std::string to_string(AxiomStatus status) {
  switch (status) {
    case AxiomStatus::pass: return "pass";
    case AxiomStatus::fail: return "fail";
    case AxiomStatus::structural: return "structural";
    case AxiomStatus::probe_limited: return "probe-limited";
  }
  return "?";
}

bool AxiomReport::passed() const noexcept {
  return std::none_of(entries.begin(), entries.end(),
                      [](const AxiomEntry& e) { return e.status == AxiomStatus::fail; });
}

const AxiomEntry& AxiomReport::entry(int axiom) const {
  require(axiom >= 1 && axiom <= static_cast<int>(entries.size()), ErrorCode::invalid_argument,
          "axiom number must lie in 1..18");
  return entries[static_cast<std::size_t>(axiom - 1)];
}

std::vector<int> AxiomReport::failed_axioms() const {
  std::vector<int> out;
  for (const auto& e : entries)
    if (e.status == AxiomStatus::fail) out.push_back(e.axiom);
  return out;
}

AxiomReport check_axioms(const NmsSpace& space, const AxiomCheckOptions& options) {
  validate(options);
  AxiomReport report;
  report.options = options;
  report.notes = space.notes();
  report.notes.push_back("continuity (vi, xi, xvi) and limit (vii, xii, xvii) verdicts are finite probes");

  Prober prober(space, options);
  const Sampler sampler(space, options);
  const Rng root(options.seed);

  for (int axiom = 1; axiom <= kAxiomCount; ++axiom) {
    AxiomEntry entry;
    entry.axiom = axiom;
    Rng rng = root.split(static_cast<std::uint64_t>(axiom));
    for (std::size_t k = 0; k < options.samples; ++k) {
      auto w = random_probe(prober, sampler, rng, axiom, k, options);
      ++entry.checked;
      if (!w) continue;
      ++entry.failures;
      if (entry.witnesses.size() < options.max_witnesses) {
        w->sample = k;
        entry.witnesses.push_back(std::move(*w));
      }
    }
    entry.status = entry.failures ? AxiomStatus::fail : pass_status(axiom);
    report.entries.push_back(std::move(entry));
  }
  report.norm_inputs_out_of_range = prober.norm_inputs_out_of_range;
  if (report.norm_inputs_out_of_range)
    report.notes.push_back("triangle checks evaluated the norms on " +
                           std::to_string(report.norm_inputs_out_of_range) +
                           " degree values outside [0, 1]");
  return report;
}

bool replay_witness(const NmsSpace& space, const Witness& w, const AxiomCheckOptions& options) {
  Prober p(space, options);
  const auto& pts = w.points;
  const auto& sc = w.scales;
  auto need = [&](std::size_t np, std::size_t ns) {
    require(pts.size() >= np && sc.size() >= ns, ErrorCode::invalid_argument,
            "witness for check '" + w.check + "' is missing points or scales");
  };
  std::optional<Witness> again;
  if (w.check == "range") {
    need(2, 1);
    again = p.range(pts[0], pts[1], sc[0]);
  } else if (w.check == "sum") {
    need(2, 1);
    again = p.sum(pts[0], pts[1], sc[0]);
  } else if (w.check == "identity_forward") {
    need(1, 1);
    again = p.identity_forward(w.axiom, pts[0], sc[0]);
  } else if (w.check == "identity_reverse") {
    need(2, 1);
    again = p.identity_reverse(w.axiom, pts[0], pts[1], sc[0]);
  } else if (w.check == "symmetry") {
    need(2, 1);
    again = p.symmetry(w.axiom, pts[0], pts[1], sc[0]);
  } else if (w.check == "triangle") {
    need(3, 2);
    again = p.triangle(w.axiom, pts[0], pts[1], pts[2], sc[0], sc[1]);
  } else if (w.check == "continuity") {
    need(2, 2);
    again = p.continuity(w.axiom, pts[0], pts[1], sc[0], sc[1]);
  } else if (w.check == "limit_tail" || w.check == "limit_trend") {
    need(2, 1);
    again = p.limit(w.axiom, pts[0], pts[1], sc);
  } else if (w.check == "clamp") {
    need(2, 1);
    again = p.clamp(pts[0], pts[1], sc[0]);
  } else {
    fail(ErrorCode::invalid_argument, "unknown witness check '" + w.check + "'");
  }
  return again.has_value() && again->axiom == w.axiom;
}

std::string to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::random: return "random";
    case SearchStrategy::grid: return "grid";
    case SearchStrategy::adversarial_line: return "adversarial-line";
  }
  return "?";
}

SearchStrategy parse_strategy(const std::string& name) {
  if (name == "random") return SearchStrategy::random;
  if (name == "grid") return SearchStrategy::grid;
  if (name == "adversarial-line" || name == "adversarial_line") return SearchStrategy::adversarial_line;
  fail(ErrorCode::config, "unknown search strategy '" + name + "'");
}

namespace {

// Candidate points for the grid strategy.
std::vector<Point> grid_points(const Universe& u) {
  if (u.is_finite()) {
    const std::size_t n = u.size();
    constexpr std::size_t kCap = 200;
    std::vector<Point> pts;
    if (n <= kCap) return u.points();
    for (std::size_t i = 0; i < kCap; ++i) pts.push_back(u.point_at(i * (n - 1) / (kCap - 1)));
    return pts;
  }
  const std::size_t dim = u.dimension();
  std::size_t per_dim = 2;
  while (std::pow(static_cast<double>(per_dim + 1), static_cast<double>(dim)) <= 64.0) ++per_dim;
  std::vector<Point> pts;
  std::vector<std::size_t> idx(dim, 0);
  while (true) {
    Point p;
    for (std::size_t d = 0; d < dim; ++d)
      p.coords.push_back(u.box_lo() + (u.box_hi() - u.box_lo()) * static_cast<double>(idx[d]) /
                                          static_cast<double>(per_dim - 1));
    pts.push_back(std::move(p));
    std::size_t d = 0;
    while (d < dim && ++idx[d] == per_dim) idx[d++] = 0;
    if (d == dim) break;
  }
  return pts;
}

// Odometer over a mixed-radix index space.
class Odometer {
 public:
  explicit Odometer(std::vector<std::size_t> radix) : radix_(std::move(radix)), idx_(radix_.size(), 0) {
    done_ = std::any_of(radix_.begin(), radix_.end(), [](std::size_t r) { return r == 0; });
  }
  bool done() const { return done_; }
  std::size_t operator[](std::size_t i) const { return idx_[i]; }
  void next() {
    std::size_t d = idx_.size();
    while (d > 0) {
      --d;
      if (++idx_[d] < radix_[d]) return;
      idx_[d] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

std::optional<Witness> grid_search(Prober& p, const std::vector<Point>& pts,
                                   const std::vector<double>& lambdas, int axiom,
                                   std::size_t eval_cap, const AxiomCheckOptions& o,
                                   std::size_t& probes) {
  const std::size_t np = pts.size(), nl = lambdas.size();
  auto over = [&] { return p.evaluations >= eval_cap; };
  if (axiom == 1 || axiom == 2 || axiom == 18) {
    for (Odometer it({np, np, nl}); !it.done() && !over(); it.next()) {
      ++probes;
      const double l = axiom == 18 ? -lambdas[it[2]] : lambdas[it[2]];
      auto w = axiom == 1 ? p.range(pts[it[0]], pts[it[1]], l)
                          : axiom == 2 ? p.sum(pts[it[0]], pts[it[1]], l) : p.clamp(pts[it[0]], pts[it[1]], l);
      if (w) return w;
    }
    return std::nullopt;
  }
  switch (block_offset(axiom)) {
    case 0:
      for (Odometer it({np, nl}); !it.done() && !over(); it.next()) {
        ++probes;
        if (auto w = p.identity_forward(axiom, pts[it[0]], lambdas[it[1]])) return w;
      }
      for (Odometer it({np, np, nl}); !it.done() && !over(); it.next()) {
        ++probes;
        if (auto w = p.identity_reverse(axiom, pts[it[0]], pts[it[1]], lambdas[it[2]])) return w;
      }
      return std::nullopt;
    case 1:
      for (Odometer it({np, np, nl}); !it.done() && !over(); it.next()) {
        ++probes;
        if (auto w = p.symmetry(axiom, pts[it[0]], pts[it[1]], lambdas[it[2]])) return w;
      }
      return std::nullopt;
    case 2:
      for (Odometer it({np, np, np, nl, nl}); !it.done() && !over(); it.next()) {
        ++probes;
        if (auto w = p.triangle(axiom, pts[it[0]], pts[it[1]], pts[it[2]], lambdas[it[3]], lambdas[it[4]]))
          return w;
      }
      return std::nullopt;
    case 3:
      for (Odometer it({np, np, nl}); !it.done() && !over(); it.next()) {
        ++probes;
        if (auto w = p.continuity(axiom, pts[it[0]], pts[it[1]], lambdas[it[2]], o.fd_step)) return w;
      }
      return std::nullopt;
    default: {
      const auto ladder = p.limit_ladder();
      for (Odometer it({np, np}); !it.done() && !over(); it.next()) {
        if (it[0] == it[1]) continue;
        ++probes;
        if (auto w = p.limit(axiom, pts[it[0]], pts[it[1]], ladder)) return w;
      }
      return std::nullopt;
    }
  }
}

// A triple (a, b, c) with b between a and c, plus a lambda split.
struct LineTriple {
  Point a, b, c;
  double lambda, mu;
};

LineTriple line_triple(const Universe& u, Rng& rng, const std::vector<double>& grid, std::size_t k) {
  static constexpr std::array<double, 6> kRatios{0.5, 0.1, 0.9, 0.01, 0.99, 0.3};
  LineTriple t;
  switch (u.kind()) {
    case UniverseKind::naturals: {
      const double n = static_cast<double>(u.bound());
      if (k % 2 == 0 && n >= 4) {
        // geometric a, a r, a r^2
        const double r = 2.0 + static_cast<double>(rng.below(static_cast<std::size_t>(std::sqrt(n)) + 1));
        const double a_max = std::max(1.0, std::floor(n / (r * r)));
        const double a = 1.0 + static_cast<double>(rng.below(static_cast<std::size_t>(a_max)));
        t.a = Point{{a}};
        t.b = Point{{std::min(n, a * r)}};
        t.c = Point{{std::min(n, a * r * r)}};
      } else {
        const double a = 1.0 + static_cast<double>(rng.below(static_cast<std::size_t>(n)));
        const double c = 1.0 + static_cast<double>(rng.below(static_cast<std::size_t>(n)));
        const double r = kRatios[k % kRatios.size()];
        t.a = Point{{a}};
        t.c = Point{{c}};
        t.b = Point{{std::round(a + r * (c - a))}};
      }
      break;
    }
    case UniverseKind::real_vector: {
      t.a = u.sample(rng);
      t.c = u.sample(rng);
      const double r = kRatios[k % kRatios.size()];
      t.b.coords.resize(t.a.coords.size());
      for (std::size_t i = 0; i < t.a.coords.size(); ++i)
        t.b.coords[i] = t.a.coords[i] + r * (t.c.coords[i] - t.a.coords[i]);
      break;
    }
    case UniverseKind::finite_labeled: {
      t.a = u.sample(rng);
      t.c = u.sample(rng);
      t.b = u.sample(rng);
      if (u.has_metric()) {
        // the point closest to lying on a geodesic from a to c
        double best = INFINITY;
        for (const auto& p : u.points()) {
          if (p == t.a || p == t.c) continue;
          const double slack = u.distance(t.a, p) + u.distance(p, t.c) - u.distance(t.a, t.c);
          if (slack < best) {
            best = slack;
            t.b = p;
          }
        }
      }
      break;
    }
  }
  const std::array<double, 3> extremes{grid.front(), grid.back(), std::sqrt(grid.front() * grid.back())};
  t.lambda = extremes[rng.below(extremes.size())];
  t.mu = extremes[rng.below(extremes.size())];
  if (k % 3 == 1 && u.has_metric()) {
    // split proportional to the two legs: the tight case for metric-built degrees
    const double d1 = u.distance(t.a, t.b), d2 = u.distance(t.b, t.c);
    if (d1 > 0.0 && d2 > 0.0) {
      const double total = t.lambda + t.mu;
      t.lambda = total * d1 / (d1 + d2);
      t.mu = total - t.lambda;
    }
  }
  return t;
}

}  // namespace

CounterexampleResult find_counterexample(const NmsSpace& space, const CounterexampleOptions& options) {
  validate(options.check);
  require(options.budget >= 1, ErrorCode::invalid_argument, "budget must be >= 1");
  std::vector<int> axioms = options.axioms;
  if (axioms.empty())
    for (int a = 1; a <= kAxiomCount; ++a) axioms.push_back(a);
  for (int a : axioms)
    require(a >= 1 && a <= kAxiomCount, ErrorCode::invalid_argument, "axiom number must lie in 1..18");

  const auto& o = options.check;
  Prober p(space, o);
  CounterexampleResult result;
  auto finish = [&](std::optional<Witness> w) {
    result.witness = std::move(w);
    result.evaluations = p.evaluations;
    if (!result.witness)
      result.note = "no witness within budget; absence of a witness is not a proof";
    return result;
  };

  Rng rng(o.seed);
  switch (options.strategy) {
    case SearchStrategy::random: {
      const Sampler s(space, o);
      for (std::size_t k = 0; p.evaluations < options.budget && result.probes < options.budget; ++k) {
        const int axiom = axioms[k % axioms.size()];
        ++result.probes;
        if (auto w = random_probe(p, s, rng, axiom, k / axioms.size(), o)) {
          w->sample = k;
          return finish(std::move(w));
        }
      }
      return finish(std::nullopt);
    }
    case SearchStrategy::grid: {
      const auto pts = grid_points(space.universe());
      const std::size_t share = std::max<std::size_t>(1, options.budget / axioms.size());
      for (std::size_t i = 0; i < axioms.size(); ++i) {
        const std::size_t cap = std::min(options.budget, p.evaluations + share);
        if (auto w = grid_search(p, pts, o.lambda_grid, axioms[i], cap, o, result.probes))
          return finish(std::move(w));
      }
      return finish(std::nullopt);
    }
    case SearchStrategy::adversarial_line: {
      const Universe& u = space.universe();
      for (std::size_t k = 0; p.evaluations < options.budget && result.probes < options.budget; ++k) {
        const int axiom = axioms[k % axioms.size()];
        const LineTriple t = line_triple(u, rng, o.lambda_grid, k / axioms.size());
        ++result.probes;
        std::optional<Witness> w;
        if (axiom == 1) w = p.range(t.a, t.c, t.lambda);
        else if (axiom == 2) w = p.sum(t.a, t.c, t.lambda);
        else if (axiom == 18) w = p.clamp(t.a, t.c, -t.lambda);
        else {
          switch (block_offset(axiom)) {
            case 0:
              w = k % 2 ? p.identity_reverse(axiom, t.a, t.b, t.lambda)
                        : p.identity_forward(axiom, t.a, t.lambda);
              break;
            case 1: w = p.symmetry(axiom, t.a, t.c, t.lambda); break;
            case 2: w = p.triangle(axiom, t.a, t.b, t.c, t.lambda, t.mu); break;
            case 3: w = p.continuity(axiom, t.a, t.c, t.lambda, o.fd_step); break;
            default:
              if (!(t.a == t.c)) w = p.limit(axiom, t.a, t.c, p.limit_ladder());
          }
        }
        if (w) {
          w->sample = k;
          return finish(std::move(w));
        }
      }
      return finish(std::nullopt);
    }
  }
  return finish(std::nullopt);
}

}  // namespace nmskit
