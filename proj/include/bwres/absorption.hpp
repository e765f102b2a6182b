#pragma once

// Absorption and 1-empowerment queries.
//
// A clause set D absorbs a non-empty clause C at x^a when every inconclusive
// round started with D that falsifies C \ {x^a} assigns x = a. The production
// test is the unit-propagation dual: propagate from the assignment alpha that
// falsifies C \ {x^a}; C is absorbed at x^a iff that reaches a conflict or
// sets x = a. A brute-force oracle that enumerates rounds is kept for small
// universes.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bwres/cnf.hpp"

namespace bwres {

/// Alpha: for every literal y^b of C \ {l}, the decision y = 1-b, in clause
/// order. Throws IllDefinedAlpha if C \ {l} is tautological and
/// PreconditionViolated if l is not in C.
std::vector<Literal> falsifying_assignment(const Clause& c, Literal l);

bool absorbed_at(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c, Literal l);
bool absorbed(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c);

/// An inconclusive round that falsifies C \ {l} without setting l true, built
/// by deciding to falsify each literal of C \ {l} in turn; empty when C is
/// absorbed at l.
std::optional<Trail> absorption_witness(std::uint32_t num_vars, std::span<const Clause> db,
                                        const Clause& c, Literal l);

/// Largest universe the round enumeration accepts.
inline constexpr std::uint32_t kOracleMaxVars = 8;

struct OracleResult {
  bool absorbed = true;
  /// Counterexample round with the fewest decisions (ties broken by variable
  /// order, value 0 first) when not absorbed.
  std::optional<Trail> witness;
  std::size_t rounds_examined = 0;
};

/// Enumerates every inconclusive round started with db as a decision
/// sequence taken at propagation fixpoints. Throws UniverseTooLarge above
/// kOracleMaxVars.
OracleResult absorbed_at_oracle(std::uint32_t num_vars, std::span<const Clause> db,
                                const Clause& c, Literal l);

/// Largest universe the exhaustive entailment check accepts.
inline constexpr std::uint32_t kEntailsMaxVars = 20;

/// db |= c by exhaustive scan. Throws UniverseTooLarge above kEntailsMaxVars.
bool entails(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c);

/// 1-empowering via l: db |= c, and unit propagation from alpha neither
/// conflicts nor sets l true.
bool empowering_at(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c,
                   Literal l);

/// Applies the given decisions in order, propagating to fixpoint after each
/// (skipping decisions on variables that are already set). Throws
/// InvalidRound if a conflict arises.
Trail build_round(std::uint32_t num_vars, std::span<const Clause> db,
                  std::span<const Literal> decisions);

/// Checks that `round` is an inconclusive round started with db: each
/// implied entry's reason was unit before it, decisions happen only at
/// fixpoints, and the final state has no empty or unit residual clause.
/// Throws InvalidRound otherwise.
void validate_round(std::span<const Clause> db, const Trail& round);

struct BeneficialReport {
  /// Definition applies to inconclusive rounds only; a conclusive round is
  /// never beneficial.
  bool inconclusive = false;
  bool falsifies_rest = false;
  bool branches_in_rest = false;
  bool leaves_unassigned = false;
  bool conclusive_when_extended = false;

  bool beneficial() const {
    return inconclusive && falsifies_rest && branches_in_rest && leaves_unassigned &&
           conclusive_when_extended;
  }
};

/// Evaluates the four conditions for `round` being beneficial for C at l:
/// it falsifies C \ {l}, all its decisions are on variables of C \ {l}, it
/// leaves var(l) unassigned, and adding the decision ~l then propagating
/// reaches a falsified clause. Throws InvalidRound if `round` is not a
/// round started with db (it may end conclusive).
BeneficialReport beneficial_report(std::uint32_t num_vars, std::span<const Clause> db,
                                   const Clause& c, Literal l, const Trail& round);
bool beneficial_check(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c,
                      Literal l, const Trail& round);

/// Oracle-side search for some round beneficial for C (at any literal).
/// Same universe guard as absorbed_at_oracle.
std::optional<std::pair<Literal, Trail>> find_beneficial_round(std::uint32_t num_vars,
                                                               std::span<const Clause> db,
                                                               const Clause& c);

}  // namespace bwres
