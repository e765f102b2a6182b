#include "bwres/absorption.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "bwres/error.hpp"
#include "bwres/solver.hpp"
#include "bwres/truth_table.hpp"

namespace bwres {

std::vector<Literal> falsifying_assignment(const Clause& c, Literal l) {
  if (!c.contains(l))
    throw Error(ErrorKind::PreconditionViolated,
                "literal " + std::to_string(l.to_dimacs()) + " is not in " + c.to_string());
  const Clause rest = c.without(l);
  if (rest.tautological())
    throw Error(ErrorKind::IllDefinedAlpha,
                c.to_string() + " minus " + std::to_string(l.to_dimacs()) + " is tautological");
  std::vector<Literal> alpha;
  alpha.reserve(rest.width());
  for (Literal y : rest) alpha.push_back(~y);
  return alpha;
}

namespace {

struct DualOutcome {
  bool conflict = false;
  bool sets_literal = false;
};

DualOutcome propagate_alpha(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c,
                            Literal l) {
  const auto alpha = falsifying_assignment(c, l);
  Trail t(num_vars);
  for (Literal a : alpha)
    if (!t.assigned(a.var())) t.push_decision(a);
  const ClauseDb cdb(num_vars, db);
  DualOutcome out;
  out.conflict = unit_propagate(cdb, t).has_value();
  out.sets_literal = t.satisfies(l);
  return out;
}

void require_nonempty(const Clause& c) {
  if (c.empty()) throw Error(ErrorKind::PreconditionViolated, "absorption needs a non-empty clause");
}

}  // namespace

bool absorbed_at(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c, Literal l) {
  require_nonempty(c);
  const auto r = propagate_alpha(num_vars, db, c, l);
  return r.conflict || r.sets_literal;
}

bool absorbed(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c) {
  require_nonempty(c);
  return std::all_of(c.begin(), c.end(),
                     [&](Literal l) { return absorbed_at(num_vars, db, c, l); });
}

std::optional<Trail> absorption_witness(std::uint32_t num_vars, std::span<const Clause> db,
                                        const Clause& c, Literal l) {
  if (absorbed_at(num_vars, db, c, l)) return std::nullopt;
  const ClauseDb cdb(num_vars, db);
  Trail t(num_vars);
  if (unit_propagate(cdb, t))
    throw Error(ErrorKind::InternalInvariant, "empty round conflicts but clause not absorbed");
  for (Literal y : c.without(l)) {
    if (t.assigned(y.var())) continue;
    t.push_decision(~y);
    if (unit_propagate(cdb, t))
      throw Error(ErrorKind::InternalInvariant, "witness construction hit a conflict");
  }
  if (!t.falsifies(c.without(l)) || t.satisfies(l))
    throw Error(ErrorKind::InternalInvariant, "witness construction failed");
  return t;
}

// ---------------------------------------------------------------------------
// Round enumeration, independent of the solver's watched-literal machinery:
// DEFAULT mode checks the whole residual set for an empty clause first, then
// takes the first unit clause in index order.

namespace {

std::optional<ClauseId> naive_closure(std::span<const Clause> db, Trail& t) {
  for (;;) {
    std::optional<std::pair<ClauseId, Literal>> unit;
    for (std::size_t i = 0; i < db.size(); ++i) {
      const auto r = restrict_clause(db[i], t);
      if (const auto* rc = std::get_if<Clause>(&r)) {
        if (rc->empty()) return static_cast<ClauseId>(i);
        if (rc->width() == 1 && !unit)
          unit.emplace(static_cast<ClauseId>(i), *rc->begin());
      }
    }
    if (!unit) return std::nullopt;
    t.push_implied(unit->second, unit->first);
  }
}

std::vector<std::int8_t> key_of(const Trail& t) {
  std::vector<std::int8_t> k(t.num_vars() + 1, 2);
  for (const auto& e : t.entries()) k[e.var.index] = e.value ? 1 : 0;
  return k;
}

// Breadth-first over decision sequences: visit(trail) is called once per
// distinct inconclusive round end state, fewest decisions first; returning
// false stops the search.
template <typename Visit>
std::size_t enumerate_rounds(std::uint32_t num_vars, std::span<const Clause> db, Visit&& visit) {
  if (num_vars > kOracleMaxVars)
    throw Error(ErrorKind::UniverseTooLarge, std::to_string(num_vars) +
                                                 " variables exceed the round enumeration limit");
  std::size_t examined = 0;
  Trail start(num_vars);
  if (naive_closure(db, start)) return examined;

  std::set<std::vector<std::int8_t>> seen{key_of(start)};
  std::deque<Trail> layer{start};
  while (!layer.empty()) {
    std::deque<Trail> next;
    for (const Trail& t : layer) {
      ++examined;
      if (!visit(t)) return examined;
      for (std::uint32_t v = 1; v <= num_vars; ++v) {
        if (t.assigned(Variable{v})) continue;
        for (bool value : {false, true}) {
          Trail child = t;
          child.push_decision(Literal(Variable{v}, value));
          if (naive_closure(db, child)) continue;
          if (seen.insert(key_of(child)).second) next.push_back(std::move(child));
        }
      }
    }
    layer = std::move(next);
  }
  return examined;
}

}  // namespace

OracleResult absorbed_at_oracle(std::uint32_t num_vars, std::span<const Clause> db,
                                const Clause& c, Literal l) {
  require_nonempty(c);
  const Clause rest = c.without(l);
  falsifying_assignment(c, l);  // same well-definedness as the dual test
  OracleResult out;
  out.rounds_examined = enumerate_rounds(num_vars, db, [&](const Trail& t) {
    if (t.falsifies(rest) && !t.satisfies(l)) {
      out.absorbed = false;
      out.witness = t;
      return false;
    }
    return true;
  });
  return out;
}

bool entails(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c) {
  return truth_table::entails(num_vars, db, c, kEntailsMaxVars);
}

bool empowering_at(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c,
                   Literal l) {
  require_nonempty(c);
  // Checked first so IllDefinedAlpha wins over the entailment guard.
  const auto r = propagate_alpha(num_vars, db, c, l);
  if (!entails(num_vars, db, c)) return false;
  return !r.conflict && !r.sets_literal;
}

Trail build_round(std::uint32_t num_vars, std::span<const Clause> db,
                  std::span<const Literal> decisions) {
  const ClauseDb cdb(num_vars, db);
  Trail t(num_vars);
  if (auto c = unit_propagate(cdb, t))
    throw Error(ErrorKind::InvalidRound, "clause " + std::to_string(*c) + " falsified at the start");
  for (Literal d : decisions) {
    if (d.var().index < 1 || d.var().index > num_vars)
      throw Error(ErrorKind::VariableOutOfRange, "decision on v" + std::to_string(d.var().index));
    if (t.assigned(d.var())) continue;
    t.push_decision(d);
    if (auto c = unit_propagate(cdb, t))
      throw Error(ErrorKind::InvalidRound, "decision " + std::to_string(d.to_dimacs()) +
                                               " falsifies clause " + std::to_string(*c));
  }
  return t;
}

namespace {

// Checks the structure of a round; returns true if it ends conclusive.
bool check_round(std::span<const Clause> db, const Trail& round, bool allow_conclusive) {
  Trail prefix(round.num_vars());
  auto residual_flags = [&](const Trail& t) {
    bool empty = false, unit = false;
    for (const auto& r : residual_formula(db, t)) {
      empty = empty || r.clause.empty();
      unit = unit || r.clause.width() == 1;
    }
    return std::pair{empty, unit};
  };

  for (std::size_t i = 0; i < round.size(); ++i) {
    const TrailEntry& e = round[i];
    const auto [has_empty, has_unit] = residual_flags(prefix);
    const std::string where = "entry " + std::to_string(i + 1);
    if (has_empty) throw Error(ErrorKind::InvalidRound, where + " follows a falsified clause");
    if (e.decision()) {
      if (has_unit) throw Error(ErrorKind::InvalidRound, where + ": decision with a unit pending");
      prefix.push_decision(e.literal());
    } else {
      if (!e.reason || *e.reason >= db.size())
        throw Error(ErrorKind::InvalidRound, where + ": implied entry without a reason");
      const auto r = restrict_clause(db[*e.reason], prefix);
      const auto* rc = std::get_if<Clause>(&r);
      if (!rc || rc->width() != 1 || *rc->begin() != e.literal())
        throw Error(ErrorKind::InvalidRound, where + ": reason is not unit on the entry");
      prefix.push_implied(e.literal(), *e.reason);
    }
  }
  const auto [has_empty, has_unit] = residual_flags(prefix);
  if (has_empty) {
    if (!allow_conclusive) throw Error(ErrorKind::InvalidRound, "round is conclusive");
    return true;
  }
  if (has_unit) throw Error(ErrorKind::InvalidRound, "round stops with a unit clause pending");
  return false;
}

}  // namespace

void validate_round(std::span<const Clause> db, const Trail& round) {
  check_round(db, round, false);
}

BeneficialReport beneficial_report(std::uint32_t num_vars, std::span<const Clause> db,
                                   const Clause& c, Literal l, const Trail& round) {
  require_nonempty(c);
  if (!c.contains(l))
    throw Error(ErrorKind::PreconditionViolated, "literal not in clause");
  if (round.num_vars() != num_vars)
    throw Error(ErrorKind::InvalidRound, "round universe differs from the clause set");
  const Clause rest = c.without(l);
  BeneficialReport rep;
  rep.inconclusive = !check_round(db, round, true);
  rep.falsifies_rest = round.falsifies(rest);
  rep.branches_in_rest = std::all_of(round.entries().begin(), round.entries().end(),
                                     [&](const TrailEntry& e) {
                                       return !e.decision() || rest.contains_var(e.var);
                                     });
  rep.leaves_unassigned = !round.assigned(l.var());
  if (rep.inconclusive && rep.leaves_unassigned) {
    Trail extended = round;
    extended.push_decision(~l);
    rep.conclusive_when_extended = unit_propagate(ClauseDb(num_vars, db), extended).has_value();
  }
  return rep;
}

bool beneficial_check(std::uint32_t num_vars, std::span<const Clause> db, const Clause& c,
                      Literal l, const Trail& round) {
  return beneficial_report(num_vars, db, c, l, round).beneficial();
}

std::optional<std::pair<Literal, Trail>> find_beneficial_round(std::uint32_t num_vars,
                                                               std::span<const Clause> db,
                                                               const Clause& c) {
  require_nonempty(c);
  std::optional<std::pair<Literal, Trail>> found;
  enumerate_rounds(num_vars, db, [&](const Trail& t) {
    for (Literal l : c) {
      if (c.without(l).tautological()) continue;
      if (beneficial_check(num_vars, db, c, l, t)) {
        found.emplace(l, t);
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace bwres
