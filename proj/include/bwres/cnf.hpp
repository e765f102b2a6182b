#pragma once

// Propositional data model: variables, literals, clauses, formulas, trails
// and restrictions, plus DIMACS reading and writing.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bwres {

/// A propositional variable v_i, 1-based.
struct Variable {
  std::uint32_t index = 0;

  constexpr auto operator<=>(const Variable&) const = default;
};

/// Literal x^a encoded as 2*index + a, so sorting by code orders by
/// (variable, polarity) with the negative literal first.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Variable v, bool value) : code_(2 * v.index + (value ? 1u : 0u)) {}

  static constexpr Literal from_code(std::uint32_t code) {
    Literal l;
    l.code_ = code;
    return l;
  }
  /// Signed DIMACS integer, non-zero.
  static Literal from_dimacs(int lit);

  constexpr Variable var() const { return Variable{code_ >> 1}; }
  /// The value a for which x = a satisfies this literal.
  constexpr bool value() const { return (code_ & 1u) != 0; }
  constexpr bool positive() const { return value(); }
  constexpr Literal operator~() const { return from_code(code_ ^ 1u); }
  constexpr std::uint32_t code() const { return code_; }
  int to_dimacs() const {
    const int v = static_cast<int>(var().index);
    return positive() ? v : -v;
  }

  constexpr auto operator<=>(const Literal&) const = default;

 private:
  std::uint32_t code_ = 0;
};

/// A set of literals in canonical sorted order. A literal and its negation
/// may coexist.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> lits);
  Clause(std::initializer_list<Literal> lits);
  static Clause from_dimacs(std::span<const int> lits);
  static Clause from_dimacs(std::initializer_list<int> lits);

  std::span<const Literal> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t width() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal l) const;
  bool contains_var(Variable v) const;
  bool tautological() const;
  /// Largest variable index mentioned, 0 for the empty clause.
  std::uint32_t max_var() const;
  Clause without(Literal l) const;
  bool subset_of(const Clause& other) const;
  std::vector<int> to_dimacs() const;
  std::string to_string() const;

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;

 private:
  std::vector<Literal> lits_;
};

std::ostream& operator<<(std::ostream& os, const Clause& c);

/// A set of clauses over the universe {v_1..v_n}. Clauses keep their order
/// of first occurrence; duplicates are dropped on insertion.
class CnfFormula {
 public:
  explicit CnfFormula(std::uint32_t num_vars = 0) : num_vars_(num_vars) {}
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }

  /// Returns false if the clause was already present.
  bool add(Clause c);
  bool contains(const Clause& c) const;
  std::size_t max_width() const;
  bool has_empty_clause() const;

  bool operator==(const CnfFormula& other) const {
    return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
  }

 private:
  std::uint32_t num_vars_;
  std::vector<Clause> clauses_;
  std::set<Clause> index_;
};

// ---------------------------------------------------------------------------
// Assignments and trails

enum class Value : std::int8_t { False = 0, True = 1, Unassigned = 2 };

constexpr Value to_value(bool b) { return b ? Value::True : Value::False; }

using ClauseId = std::uint32_t;

enum class EntryKind : std::uint8_t { Decision, Implied };

struct TrailEntry {
  Variable var;
  bool value = false;
  EntryKind kind = EntryKind::Decision;
  std::optional<ClauseId> reason;
  std::uint32_t level = 0;

  Literal literal() const { return Literal(var, value); }
  bool decision() const { return kind == EntryKind::Decision; }
  bool operator==(const TrailEntry&) const = default;
};

/// Ordered partial assignment with decision marks. Entry levels are the
/// number of decisions up to and including the entry.
class Trail {
 public:
  explicit Trail(std::uint32_t num_vars = 0);

  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(values_.size() - 1); }
  std::span<const TrailEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const TrailEntry& operator[](std::size_t i) const { return entries_[i]; }
  const TrailEntry& back() const { return entries_.back(); }

  void push_decision(Literal l);
  void push_implied(Literal l, ClauseId reason);
  void pop();
  void shrink(std::size_t new_size);
  void clear();

  Value value(Variable v) const { return values_[v.index]; }
  Value value(Literal l) const;
  bool assigned(Variable v) const { return values_[v.index] != Value::Unassigned; }
  bool satisfies(Literal l) const { return value(l) == Value::True; }
  bool falsifies(Literal l) const { return value(l) == Value::False; }
  /// Position of v's entry, only meaningful when v is assigned.
  std::size_t position(Variable v) const { return positions_[v.index]; }
  std::uint32_t level(Variable v) const { return entries_[positions_[v.index]].level; }
  std::uint32_t decision_level() const { return decisions_; }
  bool complete() const { return entries_.size() == values_.size() - 1; }

  bool satisfies(const Clause& c) const;
  bool falsifies(const Clause& c) const;

 private:
  void push(TrailEntry e);

  std::vector<TrailEntry> entries_;
  std::vector<Value> values_;
  std::vector<std::size_t> positions_;
  std::uint32_t decisions_ = 0;
};

// ---------------------------------------------------------------------------
// Restrictions

struct Satisfied {
  bool operator==(const Satisfied&) const = default;
};

/// C|_alpha: the constant 1 or the clause with its falsified literals removed.
using Restriction = std::variant<Satisfied, Clause>;

inline bool is_satisfied(const Restriction& r) { return std::holds_alternative<Satisfied>(r); }

Restriction restrict_clause(const Clause& c, const Trail& assignment);
Restriction restrict_clause(const Clause& c, Literal assigned_true);

struct ResidualClause {
  ClauseId origin;
  Clause clause;
  bool operator==(const ResidualClause&) const = default;
};

/// D|_S with satisfied clauses dropped; each residual remembers the index of
/// the clause it came from.
std::vector<ResidualClause> residual_formula(std::span<const Clause> clauses, const Trail& trail);

/// F|_{x=a} as a formula over the same universe.
CnfFormula restrict_formula(const CnfFormula& f, Literal assigned_true);

/// Total assignment indexed by variable; slot 0 is unused.
using Model = std::vector<bool>;

bool satisfies(const Clause& c, const Model& model);
bool satisfies_all(std::span<const Clause> clauses, const Model& model);

// ---------------------------------------------------------------------------
// DIMACS

struct DimacsResult {
  CnfFormula formula;
  std::size_t declared_clauses = 0;
  std::size_t read_clauses = 0;
  bool clause_count_mismatch = false;
};

DimacsResult parse_dimacs(std::string_view text);
DimacsResult parse_dimacs(std::istream& in);
DimacsResult read_dimacs_file(const std::string& path);

std::string to_dimacs(const CnfFormula& f);
void write_dimacs(std::ostream& os, const CnfFormula& f);

/// Parses "1 -3 0" (terminating zero optional) into a clause.
Clause parse_clause_literals(std::string_view text);

}  // namespace bwres
