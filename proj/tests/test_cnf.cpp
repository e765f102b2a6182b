#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "bwres/cnf.hpp"
#include "bwres/error.hpp"
#include "support.hpp"

using namespace bwres;
using namespace bwres::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected bwres::Error");
  return ErrorKind::InternalInvariant;
}

}  // namespace

TEST_CASE("literal encoding") {
  const Literal x = L(3), nx = L(-3);
  CHECK(x.var() == Variable{3});
  CHECK(x.positive());
  CHECK_FALSE(nx.positive());
  CHECK(~x == nx);
  CHECK(~~x == x);
  CHECK(nx < x);
  CHECK(x.to_dimacs() == 3);
  CHECK(nx.to_dimacs() == -3);
  CHECK(kind_of([] { (void)Literal::from_dimacs(0); }) == ErrorKind::DomainError);
}

TEST_CASE("clauses are canonical sets") {
  const Clause a = C({3, -1, 3, 2});
  CHECK(a.width() == 3);
  CHECK(a == C({-1, 2, 3}));
  CHECK(a.contains(L(-1)));
  CHECK_FALSE(a.contains(L(1)));
  CHECK(a.contains_var(Variable{1}));
  CHECK_FALSE(a.tautological());
  CHECK(C({1, -1}).tautological());
  CHECK(C({1, -1}).width() == 2);
  CHECK(a.max_var() == 3);
  CHECK(Clause{}.max_var() == 0);
  CHECK(a.without(L(2)) == C({-1, 3}));
  CHECK(C({2}).subset_of(a));
  CHECK_FALSE(C({-2}).subset_of(a));
  CHECK(a.to_string() == "-1 2 3 0");
  std::ostringstream os;
  os << Clause{};
  CHECK(os.str() == "0");
}

TEST_CASE("formula drops duplicate clauses and checks the universe") {
  CnfFormula f(3);
  CHECK(f.add(C({1, 2})));
  CHECK_FALSE(f.add(C({2, 1})));
  CHECK(f.size() == 1);
  CHECK(kind_of([&] { f.add(C({4})); }) == ErrorKind::VariableOutOfRange);
  CHECK(f.max_width() == 2);
  CHECK_FALSE(f.has_empty_clause());
  f.add(Clause{});
  CHECK(f.has_empty_clause());
}

TEST_CASE("trail levels and queries") {
  Trail t(4);
  t.push_decision(L(-1));
  t.push_implied(L(2), 0);
  t.push_decision(L(3));
  CHECK(t.size() == 3);
  CHECK(t.level(Variable{1}) == 1);
  CHECK(t.level(Variable{2}) == 1);
  CHECK(t.level(Variable{3}) == 2);
  CHECK(t.decision_level() == 2);
  CHECK(t.position(Variable{3}) == 2);
  CHECK(t.satisfies(L(-1)));
  CHECK(t.falsifies(L(1)));
  CHECK(t.value(Variable{4}) == Value::Unassigned);
  CHECK_FALSE(t.complete());
  CHECK(t.falsifies(C({1, -2})));
  CHECK(t.satisfies(C({4, 3})));
  CHECK(kind_of([&] { t.push_decision(L(1)); }) == ErrorKind::PreconditionViolated);
  t.pop();
  CHECK(t.decision_level() == 1);
  CHECK_FALSE(t.assigned(Variable{3}));
  t.shrink(0);
  CHECK(t.empty());
  CHECK(t.decision_level() == 0);
}

TEST_CASE("restrict_clause") {
  Trail x1(2);
  x1.push_decision(L(1));
  CHECK(is_satisfied(restrict_clause(C({1, 2}), x1)));

  Trail b1(2);
  b1.push_decision(L(2));
  CHECK(std::get<Clause>(restrict_clause(C({1, -2}), b1)) == C({1}));

  Trail a0(1);
  a0.push_decision(L(-1));
  CHECK(std::get<Clause>(restrict_clause(C({1}), a0)).empty());

  CHECK(std::get<Clause>(restrict_clause(C({1, -2}), L(2))) == C({1}));
  CHECK(is_satisfied(restrict_clause(C({1, -1}), L(-1))));
}

TEST_CASE("residual_formula on D0") {
  const CnfFormula d = d0();
  Trail a0(5);
  a0.push_decision(L(-1));
  const auto r = residual_formula(d.clauses(), a0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == ResidualClause{0, C({-2})});
  CHECK(r[1] == ResidualClause{1, C({2, 3})});

  const auto same = residual_formula(d.clauses(), Trail(5));
  REQUIRE(same.size() == 3);
  for (ClauseId i = 0; i < 3; ++i) CHECK(same[i].clause == d[i]);

  Trail x0(1);
  x0.push_decision(L(-1));
  const auto falsified = residual_formula(F(1, {{1}}).clauses(), x0);
  REQUIRE(falsified.size() == 1);
  CHECK(falsified[0].clause.empty());
}

TEST_CASE("restriction properties on random clauses") {
  Gen g(11);
  for (int iter = 0; iter < 300; ++iter) {
    const std::uint32_t n = 6;
    const auto cs = g.clauses(n, 6, 0, 4);
    // Random trail over a random subset of variables.
    std::vector<Literal> assigned;
    for (std::uint32_t v = 1; v <= n; ++v)
      if (g.coin()) assigned.emplace_back(Variable{v}, g.coin());
    Trail t(n);
    for (Literal l : assigned) t.push_decision(l);

    auto shuffled = assigned;
    std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
    Trail u(n);
    for (Literal l : shuffled) u.push_decision(l);
    CHECK(residual_formula(cs, t) == residual_formula(cs, u));

    // Restricting literal by literal twice equals restricting once.
    for (const auto& c : cs) {
      Restriction once = c;
      for (Literal l : assigned)
        if (auto* rc = std::get_if<Clause>(&once)) once = restrict_clause(*rc, l);
      Restriction twice = once;
      for (Literal l : assigned)
        if (auto* rc = std::get_if<Clause>(&twice)) twice = restrict_clause(*rc, l);
      CHECK(once == twice);
      CHECK(once == restrict_clause(c, t));
    }
  }
}

TEST_CASE("restrict_formula keeps the universe") {
  const CnfFormula r = restrict_formula(d0(), L(-1));
  CHECK(r.num_vars() == 5);
  CHECK(r.size() == 2);
  CHECK(r.contains(C({-2})));
  CHECK(r.contains(C({2, 3})));
}

TEST_CASE("model satisfaction") {
  Model m{false, true, false};
  CHECK(satisfies(C({1, 2}), m));
  CHECK_FALSE(satisfies(C({-1, 2}), m));
  CHECK_FALSE(satisfies(Clause{}, m));
  CHECK(satisfies_all(F(2, {{1}, {-2}}).clauses(), m));
}

TEST_CASE("parse_dimacs") {
  SUBCASE("basic") {
    const auto r = parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n");
    CHECK(r.formula.num_vars() == 3);
    CHECK(r.formula == F(3, {{1, -2}, {2, 3}}));
    CHECK_FALSE(r.clause_count_mismatch);
  }
  SUBCASE("empty clause") {
    const auto r = parse_dimacs("p cnf 1 1\n0\n");
    CHECK(r.formula.num_vars() == 1);
    REQUIRE(r.formula.size() == 1);
    CHECK(r.formula[0].empty());
  }
  SUBCASE("out of range") {
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\n3 0\n"); }) == ErrorKind::VariableOutOfRange);
  }
  SUBCASE("comments, multi-line clauses, duplicates, percent trailer") {
    const auto r = parse_dimacs("c hello\np cnf 3 3\n1 1 -2\n 3 0\nc between clauses\n-2 1 3 0\n2 0\n%\n0\n");
    CHECK(r.formula == F(3, {{1, -2, 3}, {2}}));
    CHECK(r.read_clauses == 3);
    CHECK_FALSE(r.clause_count_mismatch);
  }
  SUBCASE("count mismatch is only flagged") {
    const auto r = parse_dimacs("p cnf 2 5\n1 0\n");
    CHECK(r.clause_count_mismatch);
    CHECK(r.declared_clauses == 5);
  }
  SUBCASE("malformed input") {
    CHECK(kind_of([] { parse_dimacs("1 2 0\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs("p cnf x 2\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\np cnf 2 1\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\n1 a 0\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\n1 2\n"); }) == ErrorKind::UnterminatedClause);
    CHECK(kind_of([] { parse_dimacs(""); }) == ErrorKind::MalformedHeader);
  }
}

TEST_CASE("DIMACS round trip") {
  Gen g(5);
  for (int i = 0; i < 50; ++i) {
    CnfFormula f = g.formula(8, 12, 0, 5);
    const std::string text = to_dimacs(f);
    const auto back = parse_dimacs(text);
    CHECK(back.formula == f);
    CHECK(to_dimacs(back.formula) == text);
  }
  CHECK(to_dimacs(F(3, {{1, -2}, {}})) == "p cnf 3 2\n1 -2 0\n0\n");
}

TEST_CASE("parse_clause_literals") {
  CHECK(parse_clause_literals("1 -3 0") == C({1, -3}));
  CHECK(parse_clause_literals("-3 1") == C({1, -3}));
  CHECK(parse_clause_literals("0").empty());
  CHECK(kind_of([] { parse_clause_literals("1 0 2"); }) == ErrorKind::MalformedHeader);
}
