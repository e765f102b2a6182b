#pragma once

// Formula generators, seeded Monte Carlo trials against the simulation
// bounds, absorption tracking over restarts, and model extraction by
// self-reducibility.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bwres/cnf.hpp"
#include "bwres/resolution.hpp"
#include "bwres/solver.hpp"

namespace bwres {

enum class FamilyKind { ChainUnsat, ChainSat, Pigeonhole, RandomKcnf };

std::string_view to_string(FamilyKind k);

struct FormulaFamily {
  FamilyKind kind = FamilyKind::ChainUnsat;
  /// Variables (chains, random).
  std::uint32_t n = 0;
  /// Clauses (random).
  std::uint32_t m = 0;
  /// Clause width (random).
  std::uint32_t k = 0;
  /// Pigeons; holes = p - 1.
  std::uint32_t p = 0;
  std::uint64_t seed = 0;

  static FormulaFamily chain_unsat(std::uint32_t n) { return {FamilyKind::ChainUnsat, n}; }
  static FormulaFamily chain_sat(std::uint32_t n) { return {FamilyKind::ChainSat, n}; }
  static FormulaFamily pigeonhole(std::uint32_t p) {
    FormulaFamily f{FamilyKind::Pigeonhole};
    f.p = p;
    return f;
  }
  static FormulaFamily random_kcnf(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                                   std::uint64_t seed) {
    return {FamilyKind::RandomKcnf, n, m, k, 0, seed};
  }

  /// "n=20", "p=3", "n=5 m=10 k=3 seed=1".
  std::string params() const;
};

/// CHAIN_UNSAT(n): {x1}, {~xi, x(i+1)} for i < n, {~xn}.
/// CHAIN_SAT(n): the implications alone.
/// PIGEONHOLE(p): x_{i,j} = v_{(i-1)(p-1)+j}; one clause per pigeon, then
/// for each hole every pair of pigeons.
/// RANDOM_KCNF(n, m, k): m distinct clauses on k distinct variables with
/// uniform signs.
/// Throws InvalidParameters.
CnfFormula generate_formula(const FormulaFamily& family);

/// Pigeonhole variable for pigeon i in hole j, both 1-based.
inline Variable php_var(std::uint32_t p, std::uint32_t i, std::uint32_t j) {
  return Variable{(i - 1) * (p - 1) + j};
}

// ---------------------------------------------------------------------------
// Trials

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Outcome verdict = Outcome::Indeterminate;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t decisions = 0;
  /// Conflict budget from the bound; empty when no refutation was certified.
  std::optional<std::uint64_t> bound;
  /// Unsat within `bound`; empty when the bound is not applicable.
  std::optional<bool> within_bound;
};

struct CertifiedBound {
  BoundKind kind = BoundKind::DecisionScheme;
  /// Length and width of the refutation found by saturation.
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  /// restart_interval * random_decision_period.
  std::uint64_t scale = 1;
  double value = 0;
  std::uint64_t ceiling = 0;
};

struct ExperimentSummary {
  std::string family;
  std::string params;
  Scheme scheme = Scheme::Decision;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double fraction = 0;
  std::uint64_t p50_conflicts = 0;
  std::uint64_t p90_conflicts = 0;
  std::optional<CertifiedBound> bound;
};

struct TrialOptions {
  /// Refutation width to certify; searched upwards from 1 when empty.
  std::optional<std::size_t> width;
  /// Throw BoundUnavailable instead of running unbounded trials.
  bool require_bound = false;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  std::string family = "file";
  std::string params;
};

struct TrialsResult {
  ExperimentSummary summary;
  std::vector<TrialRecord> records;
};

/// Bound for `config.scheme` certified by bounded-width saturation: the
/// DECISION scheme uses 4 m ln(4m) n^k, 1UIP uses 4 k m ln(4knm) n^(k+1),
/// multiplied by the restart interval and the random decision period.
std::optional<CertifiedBound> certify_bound(const CnfFormula& f, const SolverConfig& config,
                                            std::optional<std::size_t> width);

/// Width-only envelope 16 k (k+1) ln(16 k n) n^(2k+1), rounded up.
std::uint64_t width_only_ceiling(std::uint64_t n, std::uint64_t k);

/// T runs with seeds base_seed + i. With a certified bound each run gets the
/// bound ceiling as its conflict budget; otherwise config.max_conflicts is
/// used as given. Results do not depend on the thread count.
/// Throws InvalidTrialCount, BoundUnavailable.
TrialsResult run_trials(const CnfFormula& f, const SolverConfig& config, std::uint64_t trials,
                        std::uint64_t base_seed, const TrialOptions& options = {});

/// Nearest-rank quantile, q in (0, 1]. Empty input gives 0.
std::uint64_t nearest_rank(std::vector<std::uint64_t> values, double q);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<ExperimentSummary>& rows);

// ---------------------------------------------------------------------------
// Absorption over time

struct AbsorptionTrack {
  /// Number of restarts completed when the database first absorbed the
  /// target; empty if that did not happen within the budget.
  std::optional<std::uint64_t> first_index;
  Outcome outcome = Outcome::Indeterminate;
  SolverStats stats;
};

/// Runs the solver restarting after every conflict (config.restart_interval
/// is overridden) and checks absorbed(db, target) before the first round and
/// after every restart. Stops at the first hit or after max_restarts.
/// Throws IllDefinedAlpha, PreconditionViolated for an empty target.
AbsorptionTrack track_absorption(const CnfFormula& f, const Clause& target,
                                 const SolverConfig& config, std::uint64_t max_restarts);

// ---------------------------------------------------------------------------
// Model extraction

struct ExtractUnsat {};
struct ExtractInconclusive {
  std::string reason;
};
using ExtractResult = std::variant<Model, ExtractUnsat, ExtractInconclusive>;

struct ExtractOptions {
  std::uint64_t seed = 0;
  /// Runs per probe; default ceil(log2 n) + 1.
  std::optional<std::uint64_t> repeats;
  Scheme scheme = Scheme::FirstUip;
};

struct ExtractStats {
  std::uint64_t solver_runs = 0;
  std::uint64_t flips = 0;
};

/// Fixes v1..vn in turn: tentatively x = 0, probe the restricted formula
/// with up to `repeats` budgeted runs, and take x = 1 when a run refutes it.
/// The budget per run is the width-only ceiling for (n, k). The final
/// assignment is checked against f; a failed check gives Inconclusive.
/// Throws InvalidParameters if some clause is wider than k.
ExtractResult extract_model(const CnfFormula& f, std::size_t k, const ExtractOptions& options = {},
                            ExtractStats* stats = nullptr);

}  // namespace bwres
