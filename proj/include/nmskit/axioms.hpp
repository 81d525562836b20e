#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmskit/space.hpp"

namespace nmskit {

inline constexpr int kAxiomCount = 18;

/// "i" .. "xviii"; throws for numbers outside 1..18.
std::string axiom_label(int axiom);
/// Inverse of axiom_label; also accepts decimal numbers ("5").
int parse_axiom(const std::string& text);

enum class AxiomStatus { pass, fail, structural, probe_limited };

std::string to_string(AxiomStatus status);

/// A concrete tuple violating one axiom. Re-running the probe named by
/// `check` on `points`/`scales` reproduces the violation (see replay_witness).
struct Witness {
  int axiom = 0;
  std::string check;  // range, sum, identity_forward, identity_reverse, symmetry,
                      // triangle, continuity, limit_tail, limit_trend, clamp
  std::size_t sample = 0;
  std::vector<Point> points;
  std::vector<double> scales;
  std::vector<DegreesTriple> degrees;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;
};

struct AxiomEntry {
  int axiom = 0;
  AxiomStatus status = AxiomStatus::pass;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;  // first max_witnesses, by sample index
};

struct AxiomCheckOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::vector<double> lambda_grid{0.1, 1.0, 10.0};
  double tol = 1e-9;          // slack on exact (in)equalities
  double limit_tol = 1e-3;    // |G-1|, B, Y bound at lambda_max
  double lambda_max = 1e6;
  double fd_step = 1e-4;
  double slope_bound = 10.0;
  std::size_t max_witnesses = 5;
};

struct AxiomReport {
  AxiomCheckOptions options;
  std::vector<AxiomEntry> entries;  // axioms i..xviii in order
  std::vector<std::string> notes;
  std::size_t norm_inputs_out_of_range = 0;

  bool passed() const noexcept;
  const AxiomEntry& entry(int axiom) const;
  std::vector<int> failed_axioms() const;
};

/// Sampled verification of all eighteen axioms. Deterministic in
/// (space, options).
AxiomReport check_axioms(const NmsSpace& space, const AxiomCheckOptions& options = {});

/// True if the witness still violates its axiom on `space`.
bool replay_witness(const NmsSpace& space, const Witness& witness,
                    const AxiomCheckOptions& options = {});

enum class SearchStrategy { random, grid, adversarial_line };

std::string to_string(SearchStrategy s);
SearchStrategy parse_strategy(const std::string& name);

struct CounterexampleOptions {
  std::vector<int> axioms;         // empty = all eighteen
  std::size_t budget = 1000000;    // space evaluations
  SearchStrategy strategy = SearchStrategy::random;
  AxiomCheckOptions check;         // seed, lambda grid and tolerances
};

struct CounterexampleResult {
  std::optional<Witness> witness;
  std::size_t evaluations = 0;
  std::size_t probes = 0;
  /// Always the same caveat when no witness was found: absence is not a proof.
  std::string note;
};

CounterexampleResult find_counterexample(const NmsSpace& space,
                                         const CounterexampleOptions& options);

}  // namespace nmskit
