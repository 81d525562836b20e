#include "nmskit/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "nmskit/error.hpp"
#include "nmskit/rng.hpp"

namespace nmskit {

namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

// Smallest x in [0, 1] (to resolution) where a monotone predicate turns true.
template <typename Pred>
double bisect_first_true(Pred&& pred) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kResidualResolution) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

// Largest x in [0, 1] (to resolution) where a monotone predicate is still true.
template <typename Pred>
double bisect_last_true(Pred&& pred) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kResidualResolution) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

void require_kind(const NormKernel& k, NormKind kind) {
  require(k.kind() == kind, ErrorCode::invalid_argument,
          "kernel '" + k.name() + "' is a " + std::string(to_string(k.kind())) +
              ", expected a " + std::string(to_string(kind)));
}

void require_open_unit(double x, const char* what) {
  require(x > 0.0 && x < 1.0, ErrorCode::invalid_argument,
          std::string(what) + " must lie in (0, 1), got " + fmt(x));
}

}  // namespace

UnitValue::UnitValue(double value) : value_(value) {
  require(value >= 0.0 && value <= 1.0, ErrorCode::domain,
          "value " + fmt(value) + " is outside [0, 1]");
}

std::string_view to_string(NormKind kind) {
  return kind == NormKind::tnorm ? "tnorm" : "tconorm";
}

NormKernel::NormKernel(std::string name, NormKind kind, Fn fn, bool builtin)
    : name_(std::move(name)), kind_(kind), fn_(std::move(fn)),
      builtin_(builtin), verified_(builtin) {}

NormKernel NormKernel::builtin(std::string_view name) {
  if (name == "min")
    return {"min", NormKind::tnorm, [](double a, double b) { return std::min(a, b); }, true};
  if (name == "product")
    return {"product", NormKind::tnorm, [](double a, double b) { return a * b; }, true};
  if (name == "lukasiewicz")
    return {"lukasiewicz", NormKind::tnorm,
            [](double a, double b) { return std::max(0.0, a + b - 1.0); }, true};
  if (name == "max")
    return {"max", NormKind::tconorm, [](double a, double b) { return std::max(a, b); }, true};
  if (name == "probsum")
    return {"probsum", NormKind::tconorm, [](double a, double b) { return a + b - a * b; }, true};
  fail(ErrorCode::config, "unknown norm kernel '" + std::string(name) + "'");
}

NormKernel NormKernel::custom(std::string name, NormKind kind, Fn fn) {
  require(static_cast<bool>(fn), ErrorCode::invalid_argument, "custom kernel needs a function");
  return {std::move(name), kind, std::move(fn), false};
}

NormKernel NormKernel::arithmetic_mean(NormKind kind) {
  return custom("arithmetic_mean", kind, [](double a, double b) { return 0.5 * (a + b); });
}

NormKernel NormKernel::verified_by(const NormReport& report) const {
  NormKernel copy = *this;
  if (report.kernel == name_ && report.kind == kind_ && report.passed()) copy.verified_ = true;
  return copy;
}

const std::vector<std::string>& builtin_tnorm_names() {
  static const std::vector<std::string> names{"min", "product", "lukasiewicz"};
  return names;
}

const std::vector<std::string>& builtin_tconorm_names() {
  static const std::vector<std::string> names{"max", "probsum"};
  return names;
}

NormPair::NormPair(NormKernel tnorm, NormKernel tconorm, bool force)
    : tnorm_(std::move(tnorm)), tconorm_(std::move(tconorm)) {
  require_kind(tnorm_, NormKind::tnorm);
  require_kind(tconorm_, NormKind::tconorm);
  if (!force) {
    require(tnorm_.verified(), ErrorCode::precondition,
            "t-norm '" + tnorm_.name() + "' is unverified (run verification or force)");
    require(tconorm_.verified(), ErrorCode::precondition,
            "t-conorm '" + tconorm_.name() + "' is unverified (run verification or force)");
  }
}

NormPair NormPair::named(std::string_view tnorm, std::string_view tconorm) {
  return {NormKernel::builtin(tnorm), NormKernel::builtin(tconorm)};
}

UnitValue apply_tnorm(const NormKernel& kernel, UnitValue s, UnitValue t) {
  require_kind(kernel, NormKind::tnorm);
  return UnitValue(kernel.raw(s, t));
}

UnitValue apply_tconorm(const NormKernel& kernel, UnitValue s, UnitValue t) {
  require_kind(kernel, NormKind::tconorm);
  return UnitValue(kernel.raw(s, t));
}

bool NormReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const NormCheck& c) { return c.passed(); });
}

std::size_t NormReport::witness_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.witnesses.size();
  return n;
}

const NormCheck& NormReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  fail(ErrorCode::invalid_argument, "no check named '" + std::string(name) + "'");
}

NormReport verify_norm_axioms(const NormKernel& kernel, const NormVerifyOptions& options) {
  require(options.samples >= 1, ErrorCode::invalid_argument, "samples must be >= 1");
  require(options.tol >= 0.0, ErrorCode::invalid_argument, "tol must be >= 0");
  require(options.step > 0.0 && options.step < 1.0, ErrorCode::invalid_argument,
          "continuity step must lie in (0, 1)");

  NormReport report;
  report.kernel = kernel.name();
  report.kind = kernel.kind();
  report.options = options;

  enum { kRange, kBoundary, kMonotone, kCommute, kAssoc, kContinuity, kChecks };
  report.checks.resize(kChecks);
  report.checks[kRange].name = "range";
  report.checks[kBoundary].name = "boundary";
  report.checks[kMonotone].name = "monotonicity";
  report.checks[kCommute].name = "commutativity";
  report.checks[kAssoc].name = "associativity";
  report.checks[kContinuity].name = "continuity";

  const bool is_tnorm = kernel.kind() == NormKind::tnorm;
  const double identity = is_tnorm ? 1.0 : 0.0;
  const char* op = is_tnorm ? " o " : " * ";
  const double tol = options.tol;
  const double h = options.step;

  std::size_t index = 0;
  auto record = [&](int which, bool ok, NormWitness w) {
    NormCheck& c = report.checks[which];
    ++c.evaluated;
    if (ok) return;
    ++c.failures;
    if (c.witnesses.size() < options.max_witnesses) {
      w.sample = index;
      c.witnesses.push_back(std::move(w));
    }
  };

  auto probe = [&](double s, double t, double u, double v) {
    const double st = kernel.raw(s, t);
    record(kRange, st >= -tol && st <= 1.0 + tol,
           {0, s, t, u, v, st, 0.0, "0 <= s" + std::string(op) + "t <= 1"});

    const double bnd = kernel.raw(s, identity);
    record(kBoundary, std::abs(bnd - s) <= tol,
           {0, s, t, u, v, bnd, s, "s" + std::string(op) + fmt(identity) + " = s"});

    const double s_lo = std::min(s, u), s_hi = std::max(s, u);
    const double t_lo = std::min(t, v), t_hi = std::max(t, v);
    const double low = kernel.raw(s_lo, t_lo), high = kernel.raw(s_hi, t_hi);
    record(kMonotone, low <= high + tol,
           {0, s_lo, t_lo, s_hi, t_hi, low, high,
            "s<=u, t<=v => s" + std::string(op) + "t <= u" + std::string(op) + "v"});

    const double ts = kernel.raw(t, s);
    record(kCommute, std::abs(st - ts) <= tol,
           {0, s, t, u, v, st, ts, "s" + std::string(op) + "t = t" + std::string(op) + "s"});

    const double left = kernel.raw(st, u);
    const double right = kernel.raw(s, kernel.raw(t, u));
    record(kAssoc, std::abs(left - right) <= tol,
           {0, s, t, u, v, left, right,
            "(s" + std::string(op) + "t)" + std::string(op) + "u = s" + std::string(op) + "(t" +
                std::string(op) + "u)"});

    const double sc = std::min(s, 1.0 - h), tc = std::min(t, 1.0 - h);
    const double bound = options.slope_bound * h + tol;
    const double ds = std::abs(kernel.raw(sc + h, t) - kernel.raw(sc, t));
    const double dt = std::abs(kernel.raw(s, tc + h) - kernel.raw(s, tc));
    const bool cont_ok = ds <= bound && dt <= bound;
    record(kContinuity, cont_ok,
           {0, ds > dt ? sc : s, ds > dt ? t : tc, h, v, std::max(ds, dt), options.slope_bound * h,
            "|f(x+h) - f(x)| <= L*h"});
    ++index;
  };

  constexpr std::array<double, 3> lattice{0.0, 1.0, 0.5};
  for (double s : lattice)
    for (double t : lattice)
      for (double u : lattice)
        for (double v : lattice) probe(s, t, u, v);
  report.corner_probes = index;

  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    const double s = rng.uniform(), t = rng.uniform(), u = rng.uniform(), v = rng.uniform();
    probe(s, t, u, v);
  }
  return report;
}

UnitValue tnorm_residual(const NormKernel& kernel, UnitValue e1, UnitValue e2) {
  require_kind(kernel, NormKind::tnorm);
  require_open_unit(e1, "epsilon1");
  require_open_unit(e2, "epsilon2");
  require(e1 > e2, ErrorCode::invalid_argument, "tnorm_residual requires epsilon1 > epsilon2");
  auto ok = [&](double x) { return kernel.raw(e1, x) >= e2; };
  require(ok(1.0), ErrorCode::no_solution,
          "no residual: " + kernel.name() + "(e1, 1) < e2, kernel is not a valid t-norm");
  if (ok(0.0)) return UnitValue(kResidualResolution);
  const double x = bisect_first_true(ok);
  require(x < 1.0, ErrorCode::no_solution, "no interior residual for kernel " + kernel.name());
  return UnitValue(x);
}

UnitValue tconorm_residual(const NormKernel& kernel, UnitValue e1, UnitValue e2) {
  require_kind(kernel, NormKind::tconorm);
  require_open_unit(e1, "epsilon1");
  require_open_unit(e2, "epsilon2");
  require(e1 > e2, ErrorCode::invalid_argument, "tconorm_residual requires epsilon1 > epsilon2");
  auto ok = [&](double x) { return kernel.raw(x, e2) <= e1; };
  require(ok(0.0), ErrorCode::no_solution,
          "no residual: " + kernel.name() + "(0, e2) > e1, kernel is not a valid t-conorm");
  if (ok(1.0)) return UnitValue(1.0 - kResidualResolution);
  const double x = bisect_last_true(ok);
  require(x > 0.0, ErrorCode::no_solution, "no interior residual for kernel " + kernel.name());
  return UnitValue(x);
}

UnitValue tnorm_diagonal_root(const NormKernel& kernel, double target) {
  require_kind(kernel, NormKind::tnorm);
  require_open_unit(target, "diagonal target");
  auto ok = [&](double x) { return kernel.raw(x, x) >= target; };
  require(ok(1.0), ErrorCode::no_solution, "no diagonal solution for " + kernel.name());
  const double x = bisect_first_true(ok);
  require(x > 0.0 && x < 1.0, ErrorCode::no_solution,
          "no interior diagonal solution for " + kernel.name() + " at resolution 1e-9");
  return UnitValue(x);
}

UnitValue tconorm_diagonal_root(const NormKernel& kernel, double target) {
  require_kind(kernel, NormKind::tconorm);
  require_open_unit(target, "diagonal target");
  auto ok = [&](double y) { return kernel.raw(y, y) <= target; };
  require(ok(0.0), ErrorCode::no_solution, "no diagonal solution for " + kernel.name());
  const double y = bisect_last_true(ok);
  require(y > 0.0 && y < 1.0, ErrorCode::no_solution,
          "no interior diagonal solution for " + kernel.name() + " at resolution 1e-9");
  return UnitValue(y);
}

std::pair<UnitValue, UnitValue> diagonal_witness(const NormPair& pair, UnitValue e5) {
  require_open_unit(e5, "epsilon5");
  return {tnorm_diagonal_root(pair.tnorm(), e5), tconorm_diagonal_root(pair.tconorm(), e5)};
}

}  // namespace nmskit
