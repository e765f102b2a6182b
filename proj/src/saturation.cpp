#include <algorithm>
#include <set>

#include "bwres/error.hpp"
#include "bwres/resolution.hpp"

namespace bwres {

namespace {

struct Node {
  Clause clause;
  std::optional<Resolvent> parents;
};

// Ancestors of `root` in index order, renumbered into a Refutation.
Refutation prune(const std::vector<Node>& nodes, std::size_t root) {
  std::vector<bool> keep(nodes.size(), false);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (keep[i]) continue;
    keep[i] = true;
    if (const auto& p = nodes[i].parents) {
      stack.push_back(p->first);
      stack.push_back(p->second);
    }
  }
  std::vector<std::size_t> renumber(nodes.size(), 0);
  Refutation proof;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    renumber[i] = proof.length();
    if (const auto& p = nodes[i].parents)
      proof.add_resolvent(nodes[i].clause, renumber[p->first], renumber[p->second], p->pivot);
    else
      proof.add_axiom(nodes[i].clause);
  }
  return proof;
}

}  // namespace

SaturationResult saturate_bounded_width(const CnfFormula& f, std::size_t k) {
  SaturationResult result;
  std::vector<Node> nodes;
  std::set<Clause> seen;

  auto finish = [&](std::size_t root) {
    result.refutation = prune(nodes, root);
    result.clauses_derived = nodes.size();
    const auto check = verify_refutation(f, *result.refutation);
    if (!check.valid || check.width > k)
      throw Error(ErrorKind::InternalInvariant, "saturation produced an invalid refutation");
    return result;
  };

  for (const auto& c : f.clauses()) {
    if (c.width() > k) {
      result.excluded_wide.push_back(c);
      continue;
    }
    if (c.tautological()) {
      ++result.excluded_tautologies;
      continue;
    }
    if (!seen.insert(c).second) continue;
    nodes.push_back(Node{c, std::nullopt});
    if (c.empty()) return finish(nodes.size() - 1);
  }

  // Given-clause loop: clause j is resolved against every earlier clause.
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Clause& a = nodes[i].clause;
      const Clause& b = nodes[j].clause;
      std::optional<Literal> clash;
      bool multiple = false;
      for (Literal l : b) {
        if (a.contains(~l)) {
          if (clash) {
            multiple = true;
            break;
          }
          clash = ~l;
        }
      }
      // Two or more clashing variables only ever give tautologies.
      if (!clash || multiple) continue;
      Clause r = resolve(a, b, *clash);
      if (r.width() > k || !seen.insert(r).second) continue;
      const bool positive_in_a = clash->positive();
      Resolvent parents{positive_in_a ? i : j, positive_in_a ? j : i, clash->var()};
      const bool empty = r.empty();
      nodes.push_back(Node{std::move(r), parents});
      if (empty) return finish(nodes.size() - 1);
    }
  }

  result.clauses_derived = nodes.size();
  return result;
}

}  // namespace bwres
