#pragma once

// Clause-learning solver with restarts and totally random decisions.
//
// The solver runs the DEFAULT / CONFLICT / UNIT / DECISION mode machine:
// from the empty state it propagates unit clauses one assignment at a time,
// stops at the first falsified clause, learns a conflict clause (DECISION or
// first-UIP scheme) and either restarts or removes trail entries from the tail
// while the learned clause stays falsified. Learned clauses are never removed.

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "bwres/cnf.hpp"
#include "bwres/rng.hpp"

namespace bwres {

enum class Scheme { Decision, FirstUip };

std::string_view to_string(Scheme s);

/// Deterministic decision rule used in non-random rounds.
using DecisionRule = std::function<Literal(const Trail&)>;

/// Lowest-index unassigned variable, value 1.
Literal lowest_unassigned_true(const Trail& trail);

struct SolverConfig {
  Scheme scheme = Scheme::Decision;
  /// Restart after every c-th conflict.
  std::uint64_t restart_interval = 1;
  /// Round i (counted from 0, one per restart) decides at random iff
  /// i % period == 0; other rounds use `heuristic`.
  std::uint64_t random_decision_period = 1;
  DecisionRule heuristic;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_conflicts;

  /// Throws InvalidParameters.
  void validate() const;
};

/// Original clauses followed by learned ones, append-only. Clause ids are
/// positions in this sequence.
class ClauseDb {
 public:
  explicit ClauseDb(const CnfFormula& original);
  /// Takes the clauses as given; ids are their positions in `clauses`.
  ClauseDb(std::uint32_t num_vars, std::span<const Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  std::size_t original_count() const { return original_count_; }
  std::span<const Clause> original() const { return {clauses_.data(), original_count_}; }
  std::span<const Clause> learned() const {
    return {clauses_.data() + original_count_, clauses_.size() - original_count_};
  }
  const Clause& operator[](ClauseId id) const { return clauses_[id]; }
  bool contains(const Clause& c) const { return index_.contains(c); }

  /// Throws InternalInvariant if the clause is already present: a correct
  /// learning scheme never relearns a clause.
  ClauseId add_learned(Clause c);

 private:
  std::uint32_t num_vars_;
  std::size_t original_count_;
  std::vector<Clause> clauses_;
  std::set<Clause> index_;
};

/// Fixpoint when empty, otherwise the falsified clause that stopped
/// propagation.
using PropagationResult = std::optional<ClauseId>;

enum class Mode : std::uint8_t { Default, Conflict, Unit, Decision };

std::string_view to_string(Mode m);

struct Conclusive {
  ClauseId falsified;
  bool operator==(const Conclusive&) const = default;
};

struct InconclusiveComplete {
  Model model;
  bool operator==(const InconclusiveComplete&) const = default;
};

struct RoundTrace {
  Trail assignments;
  std::variant<Conclusive, InconclusiveComplete> outcome;
  std::vector<Mode> modes;

  bool conclusive() const { return std::holds_alternative<Conclusive>(outcome); }
};

struct ConflictAnalysis {
  /// A_{r+1}, A_r, ..., A_1 for a trail of r entries.
  std::vector<Clause> annotations;
  Clause learned;
  Scheme scheme = Scheme::Decision;
  /// i such that learned == A_i.
  std::size_t learned_index = 0;
  /// Maximum decision level d of the conflicting trail.
  std::uint32_t max_level = 0;

  const Clause& annotation(std::size_t i) const { return annotations[annotations.size() - i]; }
};

/// A_i has exactly one variable of level d (levels read from `trail`).
bool is_asserting(const Clause& c, const Trail& trail, std::uint32_t d);

/// DECISION learns A_1; 1UIP learns A_i for the largest i with at most one
/// variable of the top decision level, which is the largest asserting A_i
/// whenever one exists.
/// Throws MalformedTrace if the falsified clause or a reason is missing or
/// does not fit the trail.
ConflictAnalysis analyze_conflict(const ClauseDb& db, const Trail& trail, ClauseId falsified,
                                  Scheme scheme);
ConflictAnalysis analyze_conflict(const ClauseDb& db, const RoundTrace& trace, Scheme scheme);

/// Drops trail entries from the tail while `learned` stays falsified; a
/// clause that is not falsified to begin with leaves the trail unchanged.
/// Throws PreconditionViolated if `learned` is empty or satisfied.
Trail backjump_after_learn(Trail trail, const Clause& learned);

/// Uniform unassigned variable and, independently, a uniform value.
/// Throws NoUnassignedVariable.
Literal random_decision(const Trail& trail, Rng& rng);

/// Extends `trail` by unit propagation over `db`; entries already on the
/// trail are kept as they are.
PropagationResult unit_propagate(const ClauseDb& db, Trail& trail);

enum class Outcome { Sat, Unsat, Indeterminate };

std::string_view to_string(Outcome o);

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  bool operator==(const SolverStats&) const = default;
};

struct Verdict {
  Outcome outcome = Outcome::Indeterminate;
  /// Verified against the original clauses when outcome is Sat.
  std::optional<Model> model;
  SolverStats stats;
};

struct LearnEvent {
  const ClauseDb& db;
  const Trail& trail;
  ClauseId falsified;
  const ConflictAnalysis& analysis;
};

class Solver {
 public:
  Solver(const CnfFormula& formula, SolverConfig config);
  Solver(ClauseDb db, SolverConfig config);

  const ClauseDb& db() const { return db_; }
  const Trail& trail() const { return trail_; }
  const SolverStats& stats() const { return stats_; }
  const SolverConfig& config() const { return config_; }
  Rng& rng() { return rng_; }

  /// Trace log destination, one event per line; nullptr disables it.
  void set_trace(std::ostream* os) { trace_ = os; }
  /// Called for every conflict before the learned clause is added.
  void on_learn(std::function<void(const LearnEvent&)> hook) { on_learn_ = std::move(hook); }
  /// Called after every restart; returning false stops the run with an
  /// Indeterminate verdict.
  void on_restart(std::function<bool(const Solver&)> hook) { on_restart_ = std::move(hook); }

  Verdict solve();

  /// One complete round from the empty state over the current clauses,
  /// without learning.
  RoundTrace run_complete_round();

  /// Replaces the trail and propagates to fixpoint or conflict.
  PropagationResult propagate_from(Trail trail);

 private:
  struct Watched {
    std::vector<Literal> lits;  // lits[0], lits[1] are watched
  };

  void attach(ClauseId id);
  /// Re-chooses all watches against the current trail and queues every unit
  /// clause; returns the first falsified clause in index order.
  PropagationResult refresh();
  PropagationResult assign(Literal l, std::optional<ClauseId> reason);
  PropagationResult propagate_queue(std::vector<Mode>* modes);
  PropagationResult visit_watches(Literal falsified);
  std::optional<Literal> unit_literal(ClauseId id) const;
  Literal pick_decision();
  void trace_line(std::string_view line);
  void trace_assignment(const TrailEntry& e);

  ClauseDb db_;
  SolverConfig config_;
  Rng rng_;
  Trail trail_;
  std::vector<Watched> watched_;
  std::vector<std::vector<ClauseId>> watches_;  // by literal code
  std::deque<ClauseId> pending_;
  SolverStats stats_;
  std::uint64_t round_index_ = 0;
  std::ostream* trace_ = nullptr;
  std::function<void(const LearnEvent&)> on_learn_;
  std::function<bool(const Solver&)> on_restart_;
};

/// Runs a fresh solver; the trace log, if requested, goes to `trace`.
Verdict solve(const CnfFormula& f, const SolverConfig& config, std::ostream* trace = nullptr);

RoundTrace run_complete_round(const ClauseDb& db, const SolverConfig& config, Rng& rng);

}  // namespace bwres
