#include "bwres/cnf.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "bwres/error.hpp"

namespace bwres {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorKind::UnterminatedClause: return "UnterminatedClause";
    case ErrorKind::NotResolvable: return "NotResolvable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoUnassignedVariable: return "NoUnassignedVariable";
    case ErrorKind::MalformedTrace: return "MalformedTrace";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::IllDefinedAlpha: return "IllDefinedAlpha";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::InvalidRound: return "InvalidRound";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::InvalidTrialCount: return "InvalidTrialCount";
    case ErrorKind::BoundUnavailable: return "BoundUnavailable";
    case ErrorKind::MalformedProof: return "MalformedProof";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw Error(ErrorKind::DomainError, "literal 0 is the clause terminator");
  const auto v = static_cast<std::uint32_t>(lit < 0 ? -static_cast<long long>(lit) : lit);
  return Literal(Variable{v}, lit > 0);
}

// ---------------------------------------------------------------------------

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause::Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

Clause Clause::from_dimacs(std::span<const int> lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (int l : lits) out.push_back(Literal::from_dimacs(l));
  return Clause(std::move(out));
}

Clause Clause::from_dimacs(std::initializer_list<int> lits) {
  return from_dimacs(std::span<const int>(lits.begin(), lits.size()));
}

bool Clause::contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::contains_var(Variable v) const {
  return contains(Literal(v, false)) || contains(Literal(v, true));
}

bool Clause::tautological() const {
  // Complementary literals are adjacent in canonical order.
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var()) return true;
  return false;
}

std::uint32_t Clause::max_var() const { return lits_.empty() ? 0 : lits_.back().var().index; }

Clause Clause::without(Literal l) const {
  Clause c;
  c.lits_.reserve(lits_.size());
  for (Literal x : lits_)
    if (x != l) c.lits_.push_back(x);
  return c;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

std::vector<int> Clause::to_dimacs() const {
  std::vector<int> out;
  out.reserve(lits_.size());
  for (Literal l : lits_) out.push_back(l.to_dimacs());
  return out;
}

std::string Clause::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  for (Literal l : c) os << l.to_dimacs() << ' ';
  return os << '0';
}

// ---------------------------------------------------------------------------

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
  for (auto& c : clauses) add(std::move(c));
}

bool CnfFormula::add(Clause c) {
  if (c.max_var() > num_vars_)
    throw Error(ErrorKind::VariableOutOfRange,
                "clause mentions v" + std::to_string(c.max_var()) + " beyond universe of size " +
                    std::to_string(num_vars_));
  if (!index_.insert(c).second) return false;
  clauses_.push_back(std::move(c));
  return true;
}

bool CnfFormula::contains(const Clause& c) const { return index_.contains(c); }

std::size_t CnfFormula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.width());
  return w;
}

bool CnfFormula::has_empty_clause() const { return contains(Clause{}); }

// ---------------------------------------------------------------------------

Trail::Trail(std::uint32_t num_vars)
    : values_(num_vars + 1, Value::Unassigned), positions_(num_vars + 1, 0) {
  entries_.reserve(num_vars);
}

Value Trail::value(Literal l) const {
  const Value v = values_[l.var().index];
  if (v == Value::Unassigned) return v;
  return (v == Value::True) == l.value() ? Value::True : Value::False;
}

void Trail::push(TrailEntry e) {
  const auto idx = e.var.index;
  if (idx == 0 || idx >= values_.size())
    throw Error(ErrorKind::VariableOutOfRange, "v" + std::to_string(idx));
  if (values_[idx] != Value::Unassigned)
    throw Error(ErrorKind::PreconditionViolated, "v" + std::to_string(idx) + " already assigned");
  values_[idx] = to_value(e.value);
  positions_[idx] = entries_.size();
  if (e.decision()) decisions_ = e.level;
  entries_.push_back(std::move(e));
}

void Trail::push_decision(Literal l) {
  push(TrailEntry{l.var(), l.value(), EntryKind::Decision, std::nullopt, decisions_ + 1});
}

void Trail::push_implied(Literal l, ClauseId reason) {
  push(TrailEntry{l.var(), l.value(), EntryKind::Implied, reason, decisions_});
}

void Trail::pop() {
  const TrailEntry& e = entries_.back();
  values_[e.var.index] = Value::Unassigned;
  if (e.decision()) --decisions_;
  entries_.pop_back();
}

void Trail::shrink(std::size_t new_size) {
  while (entries_.size() > new_size) pop();
}

void Trail::clear() { shrink(0); }

bool Trail::satisfies(const Clause& c) const {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return satisfies(l); });
}

bool Trail::falsifies(const Clause& c) const {
  return std::all_of(c.begin(), c.end(), [&](Literal l) { return falsifies(l); });
}

// ---------------------------------------------------------------------------

Restriction restrict_clause(const Clause& c, const Trail& assignment) {
  std::vector<Literal> rest;
  rest.reserve(c.width());
  for (Literal l : c) {
    switch (assignment.value(l)) {
      case Value::True: return Satisfied{};
      case Value::Unassigned: rest.push_back(l); break;
      case Value::False: break;
    }
  }
  return Clause(std::move(rest));
}

Restriction restrict_clause(const Clause& c, Literal assigned_true) {
  if (c.contains(assigned_true)) return Satisfied{};
  return c.without(~assigned_true);
}

std::vector<ResidualClause> residual_formula(std::span<const Clause> clauses, const Trail& trail) {
  std::vector<ResidualClause> out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    auto r = restrict_clause(clauses[i], trail);
    if (auto* c = std::get_if<Clause>(&r))
      out.push_back(ResidualClause{static_cast<ClauseId>(i), std::move(*c)});
  }
  return out;
}

CnfFormula restrict_formula(const CnfFormula& f, Literal assigned_true) {
  CnfFormula out(f.num_vars());
  for (const auto& c : f.clauses()) {
    auto r = restrict_clause(c, assigned_true);
    if (auto* rc = std::get_if<Clause>(&r)) out.add(std::move(*rc));
  }
  return out;
}

bool satisfies(const Clause& c, const Model& model) {
  return std::any_of(c.begin(), c.end(),
                     [&](Literal l) { return model[l.var().index] == l.value(); });
}

bool satisfies_all(std::span<const Clause> clauses, const Model& model) {
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const Clause& c) { return satisfies(c, model); });
}

}  // namespace bwres
