#include "bwres/resolution.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "bwres/error.hpp"

namespace bwres {

Clause resolve(const Clause& a, const Clause& b, Literal pivot) {
  if (!a.contains(pivot) || !b.contains(~pivot))
    throw Error(ErrorKind::NotResolvable,
                "pivot " + std::to_string(pivot.to_dimacs()) + " does not clash between " +
                    a.to_string() + " and " + b.to_string());
  std::vector<Literal> lits;
  lits.reserve(a.width() + b.width());
  for (Literal l : a)
    if (l != pivot) lits.push_back(l);
  for (Literal l : b)
    if (l != ~pivot) lits.push_back(l);
  return Clause(std::move(lits));
}

Clause resolve(const Clause& a, const Clause& b, Variable x) {
  return resolve(a, b, Literal(x, true));
}

bool resolvable_on(const Clause& a, const Clause& b, Variable v) {
  const Literal pos(v, true);
  return (a.contains(pos) && b.contains(~pos)) || (a.contains(~pos) && b.contains(pos));
}

// ---------------------------------------------------------------------------

std::size_t Refutation::width() const {
  std::size_t w = 0;
  for (const auto& s : steps_) w = std::max(w, s.clause.width());
  return w;
}

void Refutation::add_axiom(Clause c) { steps_.push_back(ProofStep{std::move(c), Axiom{}}); }

void Refutation::add_resolvent(Clause c, std::size_t first, std::size_t second, Variable pivot) {
  steps_.push_back(ProofStep{std::move(c), Resolvent{first, second, pivot}});
}

ProofCheck verify_refutation(const CnfFormula& f, const Refutation& proof) {
  ProofCheck out;
  out.length = proof.length();
  out.width = proof.width();
  const auto steps = proof.steps();
  auto reject = [&](std::size_t i, std::string reason) {
    out.valid = false;
    out.rejection = Rejection{i, std::move(reason)};
    return out;
  };

  if (steps.empty()) return reject(0, "empty proof");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    if (std::holds_alternative<Axiom>(step.justification)) {
      if (!f.contains(step.clause)) return reject(i, "axiom not in formula");
      continue;
    }
    const auto& r = std::get<Resolvent>(step.justification);
    if (r.first >= i || r.second >= i) return reject(i, "premise does not precede step");
    const Clause& a = steps[r.first].clause;
    const Clause& b = steps[r.second].clause;
    const Literal pos(r.pivot, true);
    Clause expected;
    if (a.contains(pos) && b.contains(~pos))
      expected = resolve(a, b, pos);
    else if (a.contains(~pos) && b.contains(pos))
      expected = resolve(a, b, ~pos);
    else
      return reject(i, "premises do not clash on the pivot");
    if (expected != step.clause) return reject(i, "clause is not the resolvent of its premises");
  }
  if (!steps.back().clause.empty()) return reject(steps.size() - 1, "final clause is not empty");
  out.valid = true;
  return out;
}

// ---------------------------------------------------------------------------

void write_refutation(std::ostream& os, const Refutation& proof) {
  for (const auto& step : proof.steps()) {
    if (const auto* r = std::get_if<Resolvent>(&step.justification))
      os << "r " << r->first + 1 << ' ' << r->second + 1 << ' ' << r->pivot.index << ' ';
    else
      os << "a ";
    os << step.clause << '\n';
  }
}

std::string to_text(const Refutation& proof) {
  std::ostringstream os;
  write_refutation(os, proof);
  return os.str();
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view w, std::size_t line_no) {
  long long v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size())
    throw Error(ErrorKind::MalformedProof,
                "line " + std::to_string(line_no) + ": bad integer '" + std::string(w) + "'");
  return v;
}

}  // namespace

Refutation parse_refutation(std::string_view text) {
  Refutation proof;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto words = tokens(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (words.empty() || words.front().front() == 'c') continue;

    const std::string where = "line " + std::to_string(line_no);
    std::size_t lit_begin = 1;
    std::optional<Resolvent> res;
    if (words.front() == "r") {
      if (words.size() < 5) throw Error(ErrorKind::MalformedProof, where + ": short resolvent");
      const long long i = to_int(words[1], line_no);
      const long long j = to_int(words[2], line_no);
      const long long x = to_int(words[3], line_no);
      if (i < 1 || j < 1 || x < 1)
        throw Error(ErrorKind::MalformedProof, where + ": indices and pivot must be positive");
      res = Resolvent{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                      Variable{static_cast<std::uint32_t>(x)}};
      lit_begin = 4;
    } else if (words.front() != "a") {
      throw Error(ErrorKind::MalformedProof, where + ": expected 'a' or 'r'");
    }
    if (to_int(words.back(), line_no) != 0)
      throw Error(ErrorKind::MalformedProof, where + ": clause not terminated by 0");
    std::vector<int> lits;
    for (std::size_t w = lit_begin; w + 1 < words.size(); ++w) {
      const long long l = to_int(words[w], line_no);
      if (l == 0) throw Error(ErrorKind::MalformedProof, where + ": stray 0");
      lits.push_back(static_cast<int>(l));
    }
    Clause c = Clause::from_dimacs(lits);
    if (res)
      proof.add_resolvent(std::move(c), res->first, res->second, res->pivot);
    else
      proof.add_axiom(std::move(c));
  }
  return proof;
}

}  // namespace bwres
