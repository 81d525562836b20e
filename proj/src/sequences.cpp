#include "nmskit/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmskit/error.hpp"

namespace nmskit {

namespace {

bool within(const DegreesTriple& d, double eps) { return d.g > 1.0 - eps && d.b < eps && d.y < eps; }

void validate(const SequenceOptions& o) {
  require(std::isfinite(o.epsilon) && o.epsilon > 0.0 && o.epsilon < 1.0, ErrorCode::invalid_argument,
          "epsilon must lie in (0, 1)");
  require(!o.lambda_grid.empty(), ErrorCode::invalid_argument, "lambda grid must be non-empty");
  for (double l : o.lambda_grid)
    require(std::isfinite(l) && l > 0.0, ErrorCode::invalid_argument, "lambda grid values must be positive");
  require(o.n_max >= 1, ErrorCode::invalid_argument, "N_max must be >= 1");
  require(o.min_tail_fraction >= 0.0 && o.min_tail_fraction < 1.0, ErrorCode::invalid_argument,
          "min_tail_fraction must lie in [0, 1)");
}

std::vector<Point> materialize(const Universe& u, const PointSequence& seq, std::size_t n_max) {
  require(n_max <= seq.length(), ErrorCode::invalid_argument,
          "N_max exceeds the sequence length (" + std::to_string(seq.length()) + ")");
  std::vector<Point> terms;
  terms.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    terms.push_back(seq(n));
    u.require_contains(terms.back());
  }
  return terms;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

}  // namespace

PointSequence::PointSequence(std::string name, Term term, std::size_t length)
    : name_(std::move(name)), term_(std::move(term)), length_(length) {
  require(static_cast<bool>(term_), ErrorCode::invalid_argument, "sequence needs a term function");
}

PointSequence PointSequence::from_terms(std::string name, std::vector<Point> terms) {
  const std::size_t n = terms.size();
  require(n >= 1, ErrorCode::invalid_argument, "explicit sequence must have at least one term");
  return PointSequence(std::move(name), [t = std::move(terms)](std::size_t k) { return t[k - 1]; }, n);
}

PointSequence PointSequence::harmonic(std::size_t dimension, double scale, std::size_t length) {
  return PointSequence("harmonic", [=](std::size_t n) {
    return Point{std::vector<double>(dimension, scale / static_cast<double>(n))};
  }, length);
}

PointSequence PointSequence::alternating(std::size_t dimension, double amplitude, std::size_t length) {
  return PointSequence("alternating", [=](std::size_t n) {
    return Point{std::vector<double>(dimension, n % 2 ? -amplitude : amplitude)};
  }, length);
}

PointSequence PointSequence::constant(Point value, std::size_t length) {
  return PointSequence("constant", [v = std::move(value)](std::size_t) { return v; }, length);
}

PointSequence PointSequence::geometric(std::size_t dimension, double start, double ratio, std::size_t length) {
  return PointSequence("geometric", [=](std::size_t n) {
    return Point{std::vector<double>(dimension, start * std::pow(ratio, static_cast<double>(n - 1)))};
  }, length);
}

Point PointSequence::operator()(std::size_t n) const {
  require(n >= 1 && n <= length_, ErrorCode::invalid_argument,
          "sequence index " + std::to_string(n) + " outside 1.." + std::to_string(length_));
  return term_(n);
}

std::size_t tail_cutoff(const SequenceOptions& o) {
  const double n = static_cast<double>(o.n_max);
  const auto cut = static_cast<std::size_t>(std::floor(n + 1.0 - o.min_tail_fraction * n + 1e-9));
  return std::clamp<std::size_t>(cut, 1, o.n_max);
}

ConvergenceReport converges_to(const NmsSpace& space, const PointSequence& seq, const Point& limit,
                               const SequenceOptions& options) {
  validate(options);
  space.universe().require_contains(limit);
  const auto terms = materialize(space.universe(), seq, options.n_max);
  const std::size_t cut = tail_cutoff(options);
  ConvergenceReport r;
  r.regime = "every term";
  r.holds = true;
  for (double l : options.lambda_grid) {
    ScaleVerdict v;
    v.lambda = l;
    std::size_t last_bad = 0;
    for (std::size_t n = terms.size(); n >= 1; --n) {
      const DegreesTriple d = space.evaluate(terms[n - 1], limit, l);
      ++r.pairs_checked;
      if (!within(d, options.epsilon)) {
        last_bad = n;
        v.last_violation = n;
        v.violation_degrees = d;
        break;
      }
    }
    if (last_bad + 1 <= cut) v.n = last_bad + 1;
    r.holds = r.holds && v.n.has_value();
    r.scales.push_back(std::move(v));
  }
  return r;
}

ConvergenceReport is_cauchy(const NmsSpace& space, const PointSequence& seq, const SequenceOptions& options) {
  validate(options);
  require(options.n_max >= 2, ErrorCode::invalid_argument, "Cauchy check needs N_max >= 2");
  const Universe& u = space.universe();
  const auto terms = materialize(u, seq, options.n_max);
  const std::size_t nmax = terms.size();
  const std::size_t cut = tail_cutoff(options);
  const std::size_t all_pairs = nmax * (nmax - 1) / 2;

  ConvergenceReport r;
  r.holds = true;
  r.regime = u.is_finite() ? "exact (distinct tail values)"
                           : all_pairs <= options.pair_budget ? "exhaustive" : "sampled pairs";
  const Rng root(options.seed);
  for (std::size_t li = 0; li < options.lambda_grid.size(); ++li) {
    const double l = options.lambda_grid[li];
    ScaleVerdict v;
    v.lambda = l;
    std::size_t last_bad = 0;
    auto bad = [&](std::size_t n, std::size_t m) {
      ++r.pairs_checked;
      const DegreesTriple d = space.evaluate(terms[n - 1], terms[m - 1], l);
      if (within(d, options.epsilon)) return false;
      if (n > last_bad) {
        last_bad = n;
        v.last_violation = n;
        v.violation_degrees = d;
      }
      return true;
    };
    if (u.is_finite() || all_pairs <= options.pair_budget) {
      // Walk down from the top; the first term clashing with a later one
      // fixes N. Finite universes only need the distinct later values.
      std::vector<std::size_t> later;
      for (std::size_t n = nmax; n >= 1 && last_bad == 0; --n) {
        for (std::size_t m : later)
          if (bad(n, m)) break;
        if (last_bad) break;
        const bool fresh = !u.is_finite() || std::none_of(later.begin(), later.end(), [&](std::size_t m) {
          return terms[m - 1] == terms[n - 1];
        });
        if (fresh) later.push_back(n);
      }
    } else {
      for (std::size_t n = 1; n < nmax; ++n) {
        bad(n, n + 1);
        if (n + 1 < nmax) bad(n, nmax);
      }
      Rng rng = root.split(li);
      for (std::size_t k = 0; k < options.pair_budget; ++k) {
        std::size_t n = 1 + rng.below(nmax), m = 1 + rng.below(nmax);
        if (n == m) continue;
        if (n > m) std::swap(n, m);
        bad(n, m);
      }
    }
    if (last_bad + 1 <= cut) v.n = last_bad + 1;
    r.holds = r.holds && v.n.has_value();
    r.scales.push_back(std::move(v));
  }
  return r;
}

NdzReport has_ndz(const NmsSpace& space, const NestedFamily& family, const std::vector<double>& epsilon_grid,
                  const std::vector<double>& lambda_grid) {
  require(!family.empty(), ErrorCode::invalid_argument, "nested family must be non-empty");
  require(!epsilon_grid.empty() && !lambda_grid.empty(), ErrorCode::invalid_argument,
          "epsilon and lambda grids must be non-empty");
  std::vector<std::vector<Point>> sorted;
  for (std::size_t k = 0; k < family.size(); ++k) {
    require(!family[k].empty(), ErrorCode::invalid_argument, "member " + std::to_string(k + 1) + " is empty");
    for (const auto& p : family[k]) space.universe().require_contains(p);
    auto s = family[k];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (k > 0)
      require(std::includes(sorted.back().begin(), sorted.back().end(), s.begin(), s.end()),
              ErrorCode::invalid_argument,
              "family is not decreasing at member " + std::to_string(k + 1));
    sorted.push_back(std::move(s));
  }
  NdzReport r;
  r.ndz = true;
  for (double e : epsilon_grid)
    for (double l : lambda_grid) {
      require(e > 0.0 && e < 1.0 && l > 0.0, ErrorCode::invalid_argument, "grid values out of range");
      NdzEntry entry{e, l, std::nullopt};
      for (std::size_t k = 0; k < sorted.size() && !entry.n; ++k) {
        const auto& d = sorted[k];
        bool ok = true;
        for (std::size_t i = 0; i < d.size() && ok; ++i)
          for (std::size_t j = i + 1; j < d.size() && ok; ++j) ok = within(space.evaluate(d[i], d[j], l), e);
        if (ok) entry.n = k + 1;
      }
      r.ndz = r.ndz && entry.n.has_value();
      r.entries.push_back(entry);
    }
  // members are nested, so the intersection is the last one
  r.intersection = sorted.back();
  return r;
}

CompletenessReport completeness_probe(const NmsSpace& space, std::size_t trials, const SequenceOptions& options) {
  validate(options);
  const Universe& u = space.universe();
  require(u.is_finite(), ErrorCode::precondition, "completeness probe needs a finite universe");
  require(options.n_max >= 2, ErrorCode::invalid_argument, "completeness probe needs N_max >= 2");
  const auto pts = u.points();
  const std::size_t cut = tail_cutoff(options);
  const Rng root(options.seed);
  CompletenessReport r;
  r.scale_note = "the completeness argument is applied with the scale split lambda/2 + lambda/2";
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    std::vector<Point> terms;
    terms.reserve(options.n_max);
    switch (t % 3) {
      case 0:
        for (std::size_t n = 0; n < options.n_max; ++n) terms.push_back(pts[rng.below(pts.size())]);
        break;
      case 1: {
        const std::size_t prefix = rng.below(cut);
        const Point tail = pts[rng.below(pts.size())];
        for (std::size_t n = 0; n < options.n_max; ++n)
          terms.push_back(n < prefix ? pts[rng.below(pts.size())] : tail);
        break;
      }
      default: {
        const std::size_t k = std::min<std::size_t>(pts.size(), 2 + rng.below(3));
        std::vector<Point> cycle;
        for (std::size_t i = 0; i < k; ++i) cycle.push_back(pts[(rng.below(pts.size()) + i) % pts.size()]);
        for (std::size_t n = 0; n < options.n_max; ++n) terms.push_back(cycle[n % k]);
      }
    }
    ++r.trials;
    const auto seq = PointSequence::from_terms("probe", std::move(terms));
    if (!is_cauchy(space, seq, options).holds) continue;
    ++r.cauchy;
    const bool converges = std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
      return converges_to(space, seq, p, options).holds;
    });
    if (converges) {
      ++r.convergent;
    } else {
      ++r.failures;
      if (!r.first_failure) r.first_failure = t;
    }
  }
  return r;
}

std::vector<double> unit_domain(std::size_t grid_points) {
  require(grid_points >= 2, ErrorCode::invalid_argument, "domain grid needs at least 2 points");
  std::vector<double> xs;
  for (std::size_t i = 0; i < grid_points; ++i)
    xs.push_back(static_cast<double>(i) / static_cast<double>(grid_points - 1));
  for (int k = 1; k <= 6; ++k) xs.push_back(1.0 - std::pow(10.0, -k));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

FunctionSequence FunctionSequence::named(const std::string& family, std::size_t grid_points) {
  FunctionSequence f;
  f.name = family;
  f.domain = unit_domain(grid_points);
  if (family == "x_over_n") {
    f.fn = [](std::size_t n, double x) { return x / static_cast<double>(n); };
    f.limit = [](double) { return 0.0; };
  } else if (family == "x_pow_n") {
    f.fn = [](std::size_t n, double x) { return std::pow(x, static_cast<double>(n)); };
    f.limit = [](double x) { return x < 1.0 ? 0.0 : 1.0; };
  } else if (family == "shift") {
    f.fn = [](std::size_t n, double x) { return x + 1.0 / static_cast<double>(n); };
    f.limit = [](double x) { return x; };
  } else if (family == "constant") {
    f.fn = [](std::size_t, double x) { return x; };
    f.limit = [](double x) { return x; };
  } else {
    fail(ErrorCode::config, "unknown function family '" + family +
                                "' (known: x_over_n, x_pow_n, shift, constant)");
  }
  return f;
}

namespace {

void require_real_line(const NmsSpace& space) {
  const Universe& u = space.universe();
  require(u.kind() == UniverseKind::real_vector && u.dimension() == 1, ErrorCode::precondition,
          "function sequences need a one-dimensional real target space");
}

}  // namespace

UniformReport uniform_convergence_check(const NmsSpace& space, const FunctionSequence& fseq,
                                        const SequenceOptions& options) {
  validate(options);
  require_real_line(space);
  require(!fseq.domain.empty(), ErrorCode::invalid_argument, "domain sample must be non-empty");
  require(fseq.fn && fseq.limit, ErrorCode::invalid_argument, "function sequence is incomplete");
  const std::size_t cut = tail_cutoff(options);
  UniformReport r;
  r.uniform = true;
  std::vector<double> failing;
  std::optional<PointwiseN> worst_finite;
  for (double l : options.lambda_grid) {
    UniformScale s;
    s.lambda = l;
    bool all = true;
    std::size_t worst = 1;
    for (double x : fseq.domain) {
      const Point target{{fseq.limit(x)}};
      std::size_t last_bad = 0;
      for (std::size_t n = options.n_max; n >= 1; --n)
        if (!within(space.evaluate(Point{{fseq.fn(n, x)}}, target, l), options.epsilon)) {
          last_bad = n;
          break;
        }
      PointwiseN p{x, std::nullopt};
      if (last_bad + 1 <= cut) {
        p.n = last_bad + 1;
        worst = std::max(worst, *p.n);
        if (!worst_finite || *p.n > *worst_finite->n) worst_finite = p;
      } else {
        all = false;
        failing.push_back(x);
      }
      s.pointwise.push_back(p);
    }
    if (all) s.uniform_n = worst;
    r.uniform = r.uniform && all;
    r.scales.push_back(std::move(s));
  }
  if (!r.uniform) {
    const auto [lo, hi] = std::minmax_element(failing.begin(), failing.end());
    r.divergence_point = *hi;
    r.diagnosis = "pointwise N exceeds the window [N, " + std::to_string(options.n_max) + "] (N <= " +
                  std::to_string(cut) + ") for x in [" + fmt(*lo) + ", " + fmt(*hi) + "]";
    if (worst_finite)
      r.diagnosis += "; largest finite pointwise N is " + std::to_string(*worst_finite->n) + " at x = " +
                     fmt(worst_finite->x);
    r.diagnosis += "; no single N serves the domain, divergence near x = " + fmt(*hi);
  }
  return r;
}

ContinuityReport limit_continuity_probe(const NmsSpace& space, const FunctionSequence& fseq,
                                        const UniformReport& uniform, const std::vector<double>& points,
                                        const std::vector<double>& delta_grid,
                                        const std::vector<double>& lambda_grid, double approach_tol) {
  require(uniform.uniform, ErrorCode::precondition,
          "limit continuity probe needs a uniform convergence verdict");
  require_real_line(space);
  require(!points.empty() && !delta_grid.empty() && !lambda_grid.empty(), ErrorCode::invalid_argument,
          "probe points, delta grid and lambda grid must be non-empty");
  require(!fseq.domain.empty() && fseq.limit, ErrorCode::invalid_argument, "function sequence is incomplete");
  auto deltas = delta_grid;
  std::sort(deltas.rbegin(), deltas.rend());
  const auto [dlo, dhi] = std::minmax_element(fseq.domain.begin(), fseq.domain.end());
  constexpr int kProbe = 41;

  ContinuityReport r;
  r.continuous = true;
  for (double a0 : points)
    for (double l : lambda_grid) {
      double prev_gap = INFINITY;
      double gap = 0;
      for (double delta : deltas) {
        require(delta > 0.0, ErrorCode::invalid_argument, "delta values must be positive");
        const Point f0{{fseq.limit(a0)}};
        ModulusRow row{a0, delta, l, DegreesTriple{1.0, 0.0, 0.0}, 0.0};
        for (int i = 0; i < kProbe; ++i) {
          const double a = a0 + delta * (-1.0 + 2.0 * (i + 1) / (kProbe + 1));
          if (a < *dlo || a > *dhi) continue;
          const DegreesTriple d = space.evaluate(Point{{fseq.limit(a)}}, f0, l);
          row.worst.g = std::min(row.worst.g, d.g);
          row.worst.b = std::max(row.worst.b, d.b);
          row.worst.y = std::max(row.worst.y, d.y);
        }
        gap = std::max({1.0 - row.worst.g, row.worst.b, row.worst.y});
        row.gap = gap;
        if (gap > prev_gap + 1e-12) r.continuous = false;
        prev_gap = gap;
        r.table.push_back(row);
      }
      if (gap > approach_tol) r.continuous = false;
    }
  return r;
}

}  // namespace nmskit
