#include "bwres/solver.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "bwres/error.hpp"
#include "bwres/resolution.hpp"

namespace bwres {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Decision: return "decision";
    case Scheme::FirstUip: return "1uip";
  }
  return "unknown";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Default: return "DEFAULT";
    case Mode::Conflict: return "CONFLICT";
    case Mode::Unit: return "UNIT";
    case Mode::Decision: return "DECISION";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Sat: return "SAT";
    case Outcome::Unsat: return "UNSAT";
    case Outcome::Indeterminate: return "UNKNOWN";
  }
  return "?";
}

Literal lowest_unassigned_true(const Trail& trail) {
  for (std::uint32_t v = 1; v <= trail.num_vars(); ++v)
    if (!trail.assigned(Variable{v})) return Literal(Variable{v}, true);
  throw Error(ErrorKind::NoUnassignedVariable, "all variables are assigned");
}

void SolverConfig::validate() const {
  if (restart_interval < 1) throw Error(ErrorKind::InvalidParameters, "restart interval must be >= 1");
  if (random_decision_period < 1)
    throw Error(ErrorKind::InvalidParameters, "random decision period must be >= 1");
}

// ---------------------------------------------------------------------------

ClauseDb::ClauseDb(const CnfFormula& original)
    : num_vars_(original.num_vars()),
      original_count_(original.size()),
      clauses_(original.clauses().begin(), original.clauses().end()),
      index_(clauses_.begin(), clauses_.end()) {}

ClauseDb::ClauseDb(std::uint32_t num_vars, std::span<const Clause> clauses)
    : num_vars_(num_vars),
      original_count_(clauses.size()),
      clauses_(clauses.begin(), clauses.end()),
      index_(clauses_.begin(), clauses_.end()) {
  for (const auto& c : clauses_)
    if (c.max_var() > num_vars_) throw Error(ErrorKind::VariableOutOfRange, "clause beyond universe");
}

ClauseId ClauseDb::add_learned(Clause c) {
  if (c.max_var() > num_vars_) throw Error(ErrorKind::VariableOutOfRange, "learned clause");
  if (!index_.insert(c).second)
    throw Error(ErrorKind::InternalInvariant, "clause " + c.to_string() + " learned twice");
  clauses_.push_back(std::move(c));
  return static_cast<ClauseId>(clauses_.size() - 1);
}

// ---------------------------------------------------------------------------

Literal random_decision(const Trail& trail, Rng& rng) {
  std::vector<std::uint32_t> free;
  free.reserve(trail.num_vars() - trail.size());
  for (std::uint32_t v = 1; v <= trail.num_vars(); ++v)
    if (!trail.assigned(Variable{v})) free.push_back(v);
  if (free.empty()) throw Error(ErrorKind::NoUnassignedVariable, "all variables are assigned");
  const std::uint32_t v = free[rng.below(free.size())];
  return Literal(Variable{v}, rng.coin());
}

namespace {

std::size_t vars_at_level(const Clause& c, const Trail& trail, std::uint32_t d) {
  std::size_t n = 0;
  for (Literal l : c)
    if (trail.assigned(l.var()) && trail.level(l.var()) == d) ++n;
  return n;
}

}  // namespace

bool is_asserting(const Clause& c, const Trail& trail, std::uint32_t d) {
  return vars_at_level(c, trail, d) == 1;
}

ConflictAnalysis analyze_conflict(const ClauseDb& db, const Trail& trail, ClauseId falsified,
                                  Scheme scheme) {
  if (falsified >= db.size())
    throw Error(ErrorKind::MalformedTrace, "falsified clause id out of range");
  if (!trail.falsifies(db[falsified]))
    throw Error(ErrorKind::MalformedTrace, "clause " + std::to_string(falsified) +
                                               " is not falsified by the trail");

  ConflictAnalysis out;
  out.scheme = scheme;
  out.max_level = trail.decision_level();
  out.annotations.reserve(trail.size() + 1);

  Clause a = db[falsified];
  out.annotations.push_back(a);
  for (std::size_t i = trail.size(); i >= 1; --i) {
    const TrailEntry& e = trail[i - 1];
    if (!e.decision()) {
      if (!e.reason || *e.reason >= db.size())
        throw Error(ErrorKind::MalformedTrace,
                    "implied entry " + std::to_string(i) + " has no usable reason");
      const Clause& b = db[*e.reason];
      const Literal implied = e.literal();
      const bool unit_before = b.contains(implied) &&
                               std::all_of(b.begin(), b.end(), [&](Literal l) {
                                 return l == implied ||
                                        (trail.falsifies(l) && trail.position(l.var()) < i - 1);
                               });
      if (!unit_before)
        throw Error(ErrorKind::MalformedTrace,
                    "reason of entry " + std::to_string(i) + " was not unit before it");
      if (a.contains(~implied)) a = resolve(a, b, ~implied);
    }
    out.annotations.push_back(a);
  }

  const std::size_t r = trail.size();
  if (scheme == Scheme::Decision || out.max_level == 0) {
    out.learned_index = 1;
  } else {
    // Each step removes at most one top-level variable, so some A_i with
    // i <= r is asserting unless A_{r+1} has at most one. That happens when
    // the conflict does not depend on the top decision, which a backjump
    // without restart allows: literals implied afterwards keep the level of
    // the surviving decisions. DECISION's A_1 is affected the same way.
    out.learned_index = 1;
    for (std::size_t i = r; i >= 1; --i) {
      if (vars_at_level(out.annotation(i), trail, out.max_level) <= 1) {
        out.learned_index = i;
        break;
      }
    }
  }
  out.learned = out.annotation(out.learned_index);
  if (vars_at_level(out.learned, trail, out.max_level) > 1)
    throw Error(ErrorKind::InternalInvariant, "learned clause has two top-level variables");
  return out;
}

ConflictAnalysis analyze_conflict(const ClauseDb& db, const RoundTrace& trace, Scheme scheme) {
  const auto* c = std::get_if<Conclusive>(&trace.outcome);
  if (!c) throw Error(ErrorKind::MalformedTrace, "round is not conclusive");
  return analyze_conflict(db, trace.assignments, c->falsified, scheme);
}

Trail backjump_after_learn(Trail trail, const Clause& learned) {
  if (learned.empty())
    throw Error(ErrorKind::PreconditionViolated, "cannot backjump on the empty clause");
  if (trail.satisfies(learned))
    throw Error(ErrorKind::PreconditionViolated, "learned clause is satisfied by the trail");
  while (!trail.empty() && trail.falsifies(learned)) trail.pop();
  return trail;
}

PropagationResult unit_propagate(const ClauseDb& db, Trail& trail) {
  Solver s(db, SolverConfig{});
  auto r = s.propagate_from(std::move(trail));
  trail = s.trail();
  return r;
}

// ---------------------------------------------------------------------------

Solver::Solver(const CnfFormula& formula, SolverConfig config)
    : Solver(ClauseDb(formula), std::move(config)) {}

Solver::Solver(ClauseDb db, SolverConfig config)
    : db_(std::move(db)),
      config_(std::move(config)),
      rng_(config_.seed),
      trail_(db_.num_vars()),
      watches_(2 * (static_cast<std::size_t>(db_.num_vars()) + 1)) {
  config_.validate();
  if (!config_.heuristic) config_.heuristic = lowest_unassigned_true;
  watched_.reserve(db_.size());
  for (ClauseId id = 0; id < db_.size(); ++id) attach(id);
}

void Solver::attach(ClauseId id) {
  const Clause& c = db_[id];
  watched_.push_back(Watched{std::vector<Literal>(c.begin(), c.end())});
  const auto& lits = watched_.back().lits;
  if (lits.size() >= 1) watches_[lits[0].code()].push_back(id);
  if (lits.size() >= 2) watches_[lits[1].code()].push_back(id);
}

PropagationResult Solver::refresh() {
  for (auto& w : watches_) w.clear();
  pending_.clear();
  PropagationResult first_falsified;
  for (ClauseId id = 0; id < watched_.size(); ++id) {
    auto& lits = watched_[id].lits;
    // Non-false literals first; false ones latest-assigned first, so a
    // false watch is never older than the other literals of its clause.
    std::stable_sort(lits.begin(), lits.end(), [&](Literal x, Literal y) {
      const bool fx = trail_.falsifies(x);
      const bool fy = trail_.falsifies(y);
      if (fx != fy) return !fx;
      if (!fx) return false;
      return trail_.position(x.var()) > trail_.position(y.var());
    });
    if (lits.size() >= 1) watches_[lits[0].code()].push_back(id);
    if (lits.size() >= 2) watches_[lits[1].code()].push_back(id);

    if (lits.empty() || trail_.falsifies(lits[0])) {
      if (!first_falsified) first_falsified = id;
    } else if (!trail_.satisfies(lits[0]) && (lits.size() == 1 || trail_.falsifies(lits[1]))) {
      // Unit unless some literal is already true.
      if (std::none_of(lits.begin(), lits.end(), [&](Literal l) { return trail_.satisfies(l); }))
        pending_.push_back(id);
    }
  }
  return first_falsified;
}

std::optional<Literal> Solver::unit_literal(ClauseId id) const {
  std::optional<Literal> open;
  for (Literal l : watched_[id].lits) {
    switch (trail_.value(l)) {
      case Value::True: return std::nullopt;
      case Value::Unassigned:
        if (open) return std::nullopt;
        open = l;
        break;
      case Value::False: break;
    }
  }
  return open;
}

PropagationResult Solver::assign(Literal l, std::optional<ClauseId> reason) {
  if (reason) {
    trail_.push_implied(l, *reason);
    ++stats_.propagations;
  } else {
    trail_.push_decision(l);
  }
  trace_assignment(trail_.back());
  return visit_watches(~l);
}

PropagationResult Solver::visit_watches(Literal falsified) {
  auto& list = watches_[falsified.code()];
  std::size_t keep = 0;
  PropagationResult conflict;
  std::size_t i = 0;
  for (; i < list.size(); ++i) {
    const ClauseId id = list[i];
    auto& lits = watched_[id].lits;
    if (lits.size() == 1) {
      list[keep++] = id;
      conflict = id;
      ++i;
      break;
    }
    if (lits[0] == falsified) std::swap(lits[0], lits[1]);
    if (trail_.satisfies(lits[0])) {
      list[keep++] = id;
      continue;
    }
    bool moved = false;
    for (std::size_t k = 2; k < lits.size(); ++k) {
      if (!trail_.falsifies(lits[k])) {
        std::swap(lits[1], lits[k]);
        watches_[lits[1].code()].push_back(id);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    list[keep++] = id;
    if (trail_.falsifies(lits[0])) {
      conflict = id;
      ++i;
      break;
    }
    pending_.push_back(id);
  }
  for (; i < list.size(); ++i) list[keep++] = list[i];
  list.resize(keep);
  return conflict;
}

PropagationResult Solver::propagate_queue(std::vector<Mode>* modes) {
  while (!pending_.empty()) {
    const ClauseId id = pending_.front();
    pending_.pop_front();
    const auto lit = unit_literal(id);
    if (!lit) continue;
    if (modes) {
      modes->push_back(Mode::Unit);
      modes->push_back(Mode::Default);
    }
    if (auto c = assign(*lit, id)) return c;
  }
  return std::nullopt;
}

PropagationResult Solver::propagate_from(Trail trail) {
  if (trail.num_vars() != db_.num_vars())
    throw Error(ErrorKind::PreconditionViolated, "trail universe differs from the clause set");
  trail_ = std::move(trail);
  if (auto c = refresh()) return c;
  return propagate_queue(nullptr);
}

Literal Solver::pick_decision() {
  if (round_index_ % config_.random_decision_period == 0) return random_decision(trail_, rng_);
  const Literal l = config_.heuristic(trail_);
  if (l.var().index < 1 || l.var().index > trail_.num_vars() || trail_.assigned(l.var()))
    throw Error(ErrorKind::InternalInvariant, "heuristic returned an assigned variable");
  return l;
}

void Solver::trace_line(std::string_view line) {
  if (trace_) *trace_ << line << '\n';
}

void Solver::trace_assignment(const TrailEntry& e) {
  if (!trace_) return;
  if (e.decision())
    *trace_ << "D " << e.var.index << ' ' << (e.value ? 1 : 0) << '\n';
  else
    *trace_ << "I " << e.var.index << ' ' << (e.value ? 1 : 0) << ' ' << *e.reason << '\n';
}

RoundTrace Solver::run_complete_round() {
  RoundTrace out{Trail(db_.num_vars()), Conclusive{0}, {Mode::Default}};
  trail_.clear();
  auto done = [&](PropagationResult conflict) {
    out.assignments = trail_;
    if (conflict) {
      out.modes.push_back(Mode::Conflict);
      out.outcome = Conclusive{*conflict};
    } else {
      Model m(db_.num_vars() + 1, false);
      for (const auto& e : trail_.entries()) m[e.var.index] = e.value;
      out.outcome = InconclusiveComplete{std::move(m)};
    }
    return out;
  };

  if (auto c = refresh()) return done(c);
  for (;;) {
    if (auto c = propagate_queue(&out.modes)) return done(c);
    if (trail_.complete()) return done(std::nullopt);
    out.modes.push_back(Mode::Decision);
    const Literal l = pick_decision();
    ++stats_.decisions;
    auto c = assign(l, std::nullopt);
    out.modes.push_back(Mode::Default);
    if (c) return done(c);
  }
}

Verdict Solver::solve() {
  Verdict v;
  auto finish = [&](Outcome o) {
    v.outcome = o;
    v.stats = stats_;
    if (trace_) *trace_ << "V " << to_string(o) << '\n';
    return v;
  };

  // An empty input clause is falsified by the empty state; nothing new can
  // be learned from it.
  for (ClauseId id = 0; id < db_.original_count(); ++id) {
    if (db_[id].empty()) {
      ++stats_.conflicts;
      if (trace_) *trace_ << "C " << id << '\n';
      return finish(Outcome::Unsat);
    }
  }

  trail_.clear();
  round_index_ = 0;
  PropagationResult conflict = refresh();
  for (;;) {
    if (!conflict) conflict = propagate_queue(nullptr);

    if (conflict) {
      ++stats_.conflicts;
      if (trace_) *trace_ << "C " << *conflict << '\n';
      const ConflictAnalysis analysis = analyze_conflict(db_, trail_, *conflict, config_.scheme);
      if (on_learn_) on_learn_(LearnEvent{db_, trail_, *conflict, analysis});
      if (trace_) *trace_ << "L " << analysis.learned << '\n';
      const ClauseId id = db_.add_learned(analysis.learned);
      attach(id);
      if (analysis.learned.empty()) return finish(Outcome::Unsat);
      if (config_.max_conflicts && stats_.conflicts >= *config_.max_conflicts)
        return finish(Outcome::Indeterminate);

      if (stats_.conflicts % config_.restart_interval == 0) {
        ++stats_.restarts;
        trace_line("R");
        trail_.clear();
        ++round_index_;
        if (on_restart_ && !on_restart_(*this)) return finish(Outcome::Indeterminate);
      } else {
        trail_ = backjump_after_learn(std::move(trail_), db_[id]);
      }
      conflict = refresh();
      continue;
    }

    if (trail_.complete()) {
      Model m(db_.num_vars() + 1, false);
      for (const auto& e : trail_.entries()) m[e.var.index] = e.value;
      if (!satisfies_all(db_.original(), m))
        throw Error(ErrorKind::InternalInvariant, "complete conflict-free trail is not a model");
      v.model = std::move(m);
      return finish(Outcome::Sat);
    }

    const Literal l = pick_decision();
    ++stats_.decisions;
    conflict = assign(l, std::nullopt);
  }
}

Verdict solve(const CnfFormula& f, const SolverConfig& config, std::ostream* trace) {
  Solver s(f, config);
  s.set_trace(trace);
  return s.solve();
}

RoundTrace run_complete_round(const ClauseDb& db, const SolverConfig& config, Rng& rng) {
  Solver s(db, config);
  s.rng() = rng;
  RoundTrace t = s.run_complete_round();
  rng = s.rng();
  return t;
}

}  // namespace bwres
