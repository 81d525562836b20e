#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nmskit {

/// A real number in [0, 1]. Construction outside the interval (or from NaN)
/// throws Error{domain}.
class UnitValue {
 public:
  explicit UnitValue(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

enum class NormKind { tnorm, tconorm };

std::string_view to_string(NormKind kind);

struct NormReport;

/// A named binary operation on the unit interval, tagged as a triangular norm
/// or conorm. Built-in kernels are trusted; kernels registered through
/// custom() start unverified and are refused by NormPair unless forced or
/// promoted with verified_by().
class NormKernel {
 public:
  using Fn = std::function<double(double, double)>;

  /// "min", "product", "lukasiewicz" (t-norms) and "max", "probsum"
  /// (t-conorms). Throws Error{config} for any other name.
  static NormKernel builtin(std::string_view name);
  static NormKernel custom(std::string name, NormKind kind, Fn fn);
  /// (s + t) / 2 registered under the given kind. Not a valid norm of either
  /// kind; kept as a named impostor for verification runs.
  static NormKernel arithmetic_mean(NormKind kind);

  const std::string& name() const noexcept { return name_; }
  NormKind kind() const noexcept { return kind_; }
  bool builtin() const noexcept { return builtin_; }
  bool verified() const noexcept { return verified_; }

  /// Unchecked evaluation; also used on degree values that may lie outside
  /// [0, 1] (the axiom checker evaluates norms on whatever a space produces).
  double raw(double s, double t) const { return fn_(s, t); }

  /// Copy marked verified if `report` is a passing report for this kernel.
  NormKernel verified_by(const NormReport& report) const;

 private:
  NormKernel(std::string name, NormKind kind, Fn fn, bool builtin);

  std::string name_;
  NormKind kind_;
  Fn fn_;
  bool builtin_ = false;
  bool verified_ = false;
};

const std::vector<std::string>& builtin_tnorm_names();
const std::vector<std::string>& builtin_tconorm_names();

/// The (t-norm, t-conorm) pair a space carries.
class NormPair {
 public:
  /// Throws Error{invalid_argument} on kind mismatch and Error{precondition}
  /// when a kernel is unverified and `force` is false.
  NormPair(NormKernel tnorm, NormKernel tconorm, bool force = false);

  static NormPair named(std::string_view tnorm, std::string_view tconorm);

  const NormKernel& tnorm() const noexcept { return tnorm_; }
  const NormKernel& tconorm() const noexcept { return tconorm_; }

 private:
  NormKernel tnorm_;
  NormKernel tconorm_;
};

UnitValue apply_tnorm(const NormKernel& kernel, UnitValue s, UnitValue t);
UnitValue apply_tconorm(const NormKernel& kernel, UnitValue s, UnitValue t);

struct NormVerifyOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  double slope_bound = 10.0;
  double step = 1e-4;
  std::size_t max_witnesses = 5;
};

struct NormWitness {
  std::size_t sample = 0;  // index in the probe order; corner probes come first
  double s = 0, t = 0, u = 0, v = 0;
  double lhs = 0, rhs = 0;
  std::string relation;  // rendered inequality that failed
};

struct NormCheck {
  std::string name;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  std::vector<NormWitness> witnesses;

  bool passed() const noexcept { return failures == 0; }
};

struct NormReport {
  std::string kernel;
  NormKind kind = NormKind::tnorm;
  NormVerifyOptions options;
  std::size_t corner_probes = 0;
  // range, boundary, monotonicity, commutativity, associativity, continuity
  std::vector<NormCheck> checks;

  bool passed() const noexcept;
  std::size_t witness_count() const noexcept;
  const NormCheck& check(std::string_view name) const;
};

/// Sampled verification of the defining conditions. The corner lattice
/// {0, 1/2, 1}^4 is probed first, then `samples` random tuples from `seed`.
NormReport verify_norm_axioms(const NormKernel& kernel,
                              const NormVerifyOptions& options = {});

/// Smallest e3 in (0, 1) with e1 o e3 >= e2, to within 1e-9.
/// Requires a t-norm and 0 < e2 < e1 < 1.
UnitValue tnorm_residual(const NormKernel& kernel, UnitValue e1, UnitValue e2);

/// Largest e4 in (0, 1) with e4 * e2 <= e1, to within 1e-9.
/// Requires a t-conorm and 0 < e2 < e1 < 1.
UnitValue tconorm_residual(const NormKernel& kernel, UnitValue e1, UnitValue e2);

/// Smallest x with x o x >= target (t-norm) to within 1e-9, interior to (0,1).
UnitValue tnorm_diagonal_root(const NormKernel& kernel, double target);
/// Largest y with y * y <= target (t-conorm) to within 1e-9, interior to (0,1).
UnitValue tconorm_diagonal_root(const NormKernel& kernel, double target);

/// (e6, e7) with e6 o e6 >= e5 and e7 * e7 <= e5.
std::pair<UnitValue, UnitValue> diagonal_witness(const NormPair& pair, UnitValue e5);

inline constexpr double kResidualResolution = 1e-9;

}  // namespace nmskit
