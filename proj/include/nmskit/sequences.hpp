#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmskit/space.hpp"

namespace nmskit {

/// Terms a_1, a_2, ..., a_length (1-based).
class PointSequence {
 public:
  using Term = std::function<Point(std::size_t)>;

  PointSequence(std::string name, Term term, std::size_t length);
  static PointSequence from_terms(std::string name, std::vector<Point> terms);

  // Real sequences with every coordinate of a point in R^dimension equal to
  // the scalar term.
  static PointSequence harmonic(std::size_t dimension, double scale, std::size_t length);      // scale/n
  static PointSequence alternating(std::size_t dimension, double amplitude, std::size_t length);  // (-1)^n amp
  static PointSequence constant(Point value, std::size_t length);
  static PointSequence geometric(std::size_t dimension, double start, double ratio, std::size_t length);

  Point operator()(std::size_t n) const;
  std::size_t length() const noexcept { return length_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Term term_;
  std::size_t length_;
};

struct SequenceOptions {
  double epsilon = 0.1;
  std::vector<double> lambda_grid{0.1, 1.0, 10.0};
  std::size_t n_max = 10000;
  // "for all n >= N" is read on [N, n_max]; N counts only when that window
  // covers at least this fraction of the horizon.
  double min_tail_fraction = 0.5;
  std::size_t pair_budget = 10000;
  std::uint64_t seed = 0;
};

/// Largest N accepted under the tail-fraction rule.
std::size_t tail_cutoff(const SequenceOptions& options);

struct ScaleVerdict {
  double lambda = 0;
  std::optional<std::size_t> n;  // least N; empty when none inside the cutoff
  std::optional<std::size_t> last_violation;  // index (or smaller pair index) of the last failure
  std::optional<DegreesTriple> violation_degrees;
};

struct ConvergenceReport {
  std::vector<ScaleVerdict> scales;
  bool holds = false;
  std::string regime;  // how pairs were covered (Cauchy)
  std::size_t pairs_checked = 0;
};

ConvergenceReport converges_to(const NmsSpace& space, const PointSequence& seq, const Point& limit,
                               const SequenceOptions& options = {});

ConvergenceReport is_cauchy(const NmsSpace& space, const PointSequence& seq,
                            const SequenceOptions& options = {});

using NestedFamily = std::vector<std::vector<Point>>;

struct NdzEntry {
  double epsilon = 0, lambda = 0;
  std::optional<std::size_t> n;  // least member index (1-based) whose pairs all satisfy the bounds
};

struct NdzReport {
  std::vector<NdzEntry> entries;
  bool ndz = false;
  std::vector<Point> intersection;  // exact intersection of all members
};

/// Throws invalid_argument for an empty family, an empty member or a family
/// that is not decreasing.
NdzReport has_ndz(const NmsSpace& space, const NestedFamily& family, const std::vector<double>& epsilon_grid,
                  const std::vector<double>& lambda_grid);

struct CompletenessReport {
  std::size_t trials = 0;
  std::size_t cauchy = 0;
  std::size_t convergent = 0;
  std::size_t failures = 0;  // Cauchy with no limit in the universe
  std::optional<std::size_t> first_failure;
  std::string scale_note;
};

/// Random, eventually-constant and oscillating sequences on a finite
/// universe; every sequence judged Cauchy must converge to some point.
CompletenessReport completeness_probe(const NmsSpace& space, std::size_t trials,
                                      const SequenceOptions& options = {});

/// f_n and the candidate limit f, both real functions of one variable,
/// evaluated on a domain sample.
struct FunctionSequence {
  std::string name;
  std::vector<double> domain;
  std::function<double(std::size_t, double)> fn;
  std::function<double(double)> limit;

  static FunctionSequence named(const std::string& family, std::size_t grid_points = 21);
};

/// [0, 1] on an even grid plus the points 1 - 10^-k, k = 1..6.
std::vector<double> unit_domain(std::size_t grid_points);

struct PointwiseN {
  double x = 0;
  std::optional<std::size_t> n;
};

struct UniformScale {
  double lambda = 0;
  std::vector<PointwiseN> pointwise;
  std::optional<std::size_t> uniform_n;  // max of the pointwise N, inside the cutoff
};

struct UniformReport {
  std::vector<UniformScale> scales;
  bool uniform = false;
  // Set when the check fails: where the pointwise N breaks down.
  std::optional<double> divergence_point;
  std::string diagnosis;
};

/// Target space must be a one-dimensional real_vector universe.
UniformReport uniform_convergence_check(const NmsSpace& space, const FunctionSequence& fseq,
                                        const SequenceOptions& options = {});

struct ModulusRow {
  double point = 0, delta = 0, lambda = 0;
  DegreesTriple worst;  // min G, max B, max Y over |a - a0| < delta
  double gap = 0;       // max(1 - G, B, Y)
};

struct ContinuityReport {
  std::vector<ModulusRow> table;
  bool continuous = false;
};

/// Spot check of the limit's modulus of continuity. Throws precondition
/// unless `uniform.uniform`.
ContinuityReport limit_continuity_probe(const NmsSpace& space, const FunctionSequence& fseq,
                                        const UniformReport& uniform, const std::vector<double>& points,
                                        const std::vector<double>& delta_grid,
                                        const std::vector<double>& lambda_grid, double approach_tol = 1e-2);

}  // namespace nmskit
