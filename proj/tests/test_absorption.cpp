#include <doctest.h>

#include "bwres/absorption.hpp"
#include "bwres/error.hpp"
#include "bwres/resolution.hpp"
#include "bwres/solver.hpp"
#include "support.hpp"

using namespace bwres;
using namespace bwres::testing;

namespace {

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected bwres::Error");
  return ErrorKind::InternalInvariant;
}

// a..e = v1..v5
const Clause kAorC = C({1, 3});
const Clause kNotBDE = C({-2, 4, 5});

bool alpha_ok(const Clause& c, Literal l) { return !c.without(l).tautological(); }

}  // namespace

TEST_CASE("D0 worked example") {
  const CnfFormula d = d0();
  const auto db = d.clauses();
  CHECK(absorbed(5, db, kAorC));
  CHECK(absorbed_at(5, db, kAorC, L(3)));
  CHECK_FALSE(absorbed_at(5, db, kNotBDE, L(-2)));
  CHECK_FALSE(absorbed(5, db, kNotBDE));
  CHECK(entails(5, db, kNotBDE));
  CHECK_FALSE(entails(5, db, C({4})));
  CHECK(absorbed(5, db, C({1, -2})));

  const auto oracle = absorbed_at_oracle(5, db, kNotBDE, L(-2));
  CHECK_FALSE(oracle.absorbed);
  REQUIRE(oracle.witness);
  const Trail& w = *oracle.witness;
  REQUIRE(w.size() == 2);
  CHECK(w[0].decision());
  CHECK(w[0].literal() == L(-4));
  CHECK(w[1].decision());
  CHECK(w[1].literal() == L(-5));
  CHECK(absorbed_at_oracle(5, db, kAorC, L(3)).absorbed);

  const auto dual = absorption_witness(5, db, kNotBDE, L(-2));
  REQUIRE(dual);
  CHECK(dual->size() == 2);
  CHECK(dual->falsifies(C({4, 5})));
  CHECK_FALSE(absorption_witness(5, db, kAorC, L(1)));

  CHECK(empowering_at(5, db, kNotBDE, L(-2)));
  CHECK_FALSE(empowering_at(5, db, kAorC, L(3)));
  CHECK_FALSE(empowering_at(5, db, C({4}), L(4)));
}

TEST_CASE("F4 and the empty round") {
  const CnfFormula f = f4();
  const auto oracle = absorbed_at_oracle(2, f.clauses(), C({2}), L(2));
  CHECK_FALSE(oracle.absorbed);
  REQUIRE(oracle.witness);
  CHECK(oracle.witness->empty());
  CHECK_FALSE(absorbed_at(2, f.clauses(), C({2}), L(2)));
}

TEST_CASE("falsifying assignment and errors") {
  CHECK(falsifying_assignment(C({1, -2, 3}), L(3)) == std::vector<Literal>{L(-1), L(2)});
  CHECK(falsifying_assignment(C({1}), L(1)).empty());
  CHECK(kind_of([] { falsifying_assignment(C({1, -1, 2}), L(2)); }) == ErrorKind::IllDefinedAlpha);
  CHECK(kind_of([] { falsifying_assignment(C({1}), L(2)); }) == ErrorKind::PreconditionViolated);
  // {x, ~x} minus x is a single literal, so alpha exists.
  CHECK_NOTHROW(absorbed_at(1, F(1, {{1}}).clauses(), C({1, -1}), L(1)));
  CHECK(kind_of([] { absorbed(5, d0().clauses(), C({1, -1, 2})); }) == ErrorKind::IllDefinedAlpha);
  CHECK(kind_of([] { absorbed(5, d0().clauses(), Clause{}); }) == ErrorKind::PreconditionViolated);
  CHECK(kind_of([] { absorbed_at_oracle(9, {}, C({1}), L(1)); }) == ErrorKind::UniverseTooLarge);
  CHECK(kind_of([] { entails(21, {}, C({1})); }) == ErrorKind::UniverseTooLarge);
}

TEST_CASE("beneficial rounds") {
  const CnfFormula f = f4();
  SUBCASE("F4, empty round") {
    const Trail empty = build_round(2, f.clauses(), {});
    const auto rep = beneficial_report(2, f.clauses(), C({2}), L(2), empty);
    CHECK(rep.inconclusive);
    CHECK(rep.falsifies_rest);
    CHECK(rep.branches_in_rest);
    CHECK(rep.leaves_unassigned);
    CHECK(rep.conclusive_when_extended);
    CHECK(rep.beneficial());
  }
  SUBCASE("F4, deciding x = 1") {
    CHECK(kind_of([&] {
            const std::vector<Literal> ds{L(1)};
            build_round(2, f.clauses(), ds);
          }) == ErrorKind::InvalidRound);
    Trail t(2);
    t.push_decision(L(1));
    t.push_implied(L(2), 1);
    const auto rep = beneficial_report(2, f.clauses(), C({2}), L(2), t);
    CHECK_FALSE(rep.branches_in_rest);
    CHECK_FALSE(rep.beneficial());
    CHECK_FALSE(beneficial_check(2, f.clauses(), C({2}), L(2), t));
  }
  SUBCASE("D0, d = 0 and e = 0") {
    const std::vector<Literal> ds{L(-4), L(-5)};
    const Trail t = build_round(5, d0().clauses(), ds);
    CHECK(beneficial_check(5, d0().clauses(), kNotBDE, L(-2), t));
  }
  SUBCASE("malformed rounds") {
    Trail t(2);
    t.push_implied(L(2), 0);  // x or y is not unit under the empty trail
    CHECK(kind_of([&] { validate_round(f.clauses(), t); }) == ErrorKind::InvalidRound);
    Trail pending(3);
    pending.push_decision(L(1));
    pending.push_decision(L(2));  // unit {z} pending after x = 1
    CHECK(kind_of([&] { validate_round(F(3, {{-1, 3}}).clauses(), pending); }) ==
          ErrorKind::InvalidRound);
  }
  SUBCASE("search") {
    const auto found = find_beneficial_round(2, f.clauses(), C({2}));
    REQUIRE(found);
    CHECK(found->first == L(2));
    CHECK(found->second.empty());
    CHECK_FALSE(find_beneficial_round(5, d0().clauses(), kAorC));
  }
}

TEST_CASE("absorption duality and oracle equivalence") {
  Gen g(1234);
  int entailed = 0;
  for (int iter = 0; iter < 600; ++iter) {
    const auto n = static_cast<std::uint32_t>(g.uniform(1, 4));
    const auto db = g.clauses(n, g.uniform(0, 6), 1, 3);
    const Clause c = g.clause(n, static_cast<std::uint32_t>(g.uniform(1, n)), true);
    const Literal l = *(c.begin() + g.uniform(0, c.width() - 1));
    if (!alpha_ok(c, l)) {
      CHECK(kind_of([&] { absorbed_at(n, db, c, l); }) == ErrorKind::IllDefinedAlpha);
      continue;
    }
    const bool fast = absorbed_at(n, db, c, l);
    const auto oracle = absorbed_at_oracle(n, db, c, l);
    CHECK(fast == oracle.absorbed);
    CHECK(fast == !absorption_witness(n, db, c, l).has_value());
    if (!oracle.absorbed) {
      REQUIRE(oracle.witness);
      CHECK_NOTHROW(validate_round(db, *oracle.witness));
      CHECK(oracle.witness->falsifies(c.without(l)));
      CHECK_FALSE(oracle.witness->satisfies(l));
    }
    if (naive_entails(n, db, c)) {
      ++entailed;
      CHECK(fast == !empowering_at(n, db, c, l));
    } else {
      CHECK_FALSE(empowering_at(n, db, c, l));
    }
  }
  CHECK(entailed > 50);
}

TEST_CASE("absorbed clauses are entailed") {
  Gen g(99);
  int hits = 0;
  for (int iter = 0; iter < 800; ++iter) {
    const auto n = static_cast<std::uint32_t>(g.uniform(2, 10));
    const auto db = g.clauses(n, g.uniform(n, 3 * n), 1, 3);
    const Clause c = g.clause(n, static_cast<std::uint32_t>(g.uniform(1, std::min(3u, n))));
    if (absorbed(n, db, c)) {
      ++hits;
      CHECK(naive_entails(n, db, c));
    }
  }
  CHECK(hits > 20);
}

TEST_CASE("absorption is monotone") {
  Gen g(7);
  for (int iter = 0; iter < 400; ++iter) {
    const auto n = static_cast<std::uint32_t>(g.uniform(2, 5));
    const auto db = g.clauses(n, g.uniform(1, 8), 1, 3);
    // Members are absorbed.
    for (const auto& c : db) CHECK(absorbed(n, db, c));
    // Supersets of absorbed clauses are absorbed.
    const Clause a = g.clause(n, static_cast<std::uint32_t>(g.uniform(1, n)));
    if (absorbed(n, db, a)) {
      std::vector<Literal> lits(a.begin(), a.end());
      const Clause extra = g.clause(n, 1);
      lits.push_back(*extra.begin());
      const Clause b(lits);
      if (!b.tautological()) CHECK(absorbed(n, db, b));
      // More clauses keep it absorbed.
      auto bigger = db;
      for (const auto& c : g.clauses(n, g.uniform(1, 4), 1, 3)) bigger.push_back(c);
      CHECK(absorbed(n, bigger, a));
    }
  }
}

TEST_CASE("unabsorbed resolvents are unabsorbed only at merge literals") {
  Gen g(555);
  int checked = 0;
  for (int iter = 0; iter < 4000 && checked < 300; ++iter) {
    const auto n = static_cast<std::uint32_t>(g.uniform(2, 5));
    const auto db = g.clauses(n, g.uniform(1, 8), 1, 3);
    Clause a = g.uniform(0, 1) ? db[g.uniform(0, db.size() - 1)] : g.clause(n, 2);
    Clause b = g.uniform(0, 1) ? db[g.uniform(0, db.size() - 1)] : g.clause(n, 2);
    std::optional<Literal> pivot;
    for (Literal x : a)
      if (b.contains(~x)) pivot = pivot ? std::optional<Literal>{} : x;
    if (!pivot) continue;  // no clash, or more than one
    const Clause c = resolve(a, b, *pivot);
    if (c.empty() || c.tautological()) continue;
    if (!absorbed(n, db, a) || !absorbed(n, db, b)) continue;
    ++checked;
    for (Literal l : c)
      if (!absorbed_at(n, db, c, l)) {
        CHECK(a.contains(l));
        CHECK(b.contains(l));
      }
    if (!absorbed(n, db, c)) CHECK(find_beneficial_round(n, db, c).has_value());
  }
  CHECK(checked > 50);
}
