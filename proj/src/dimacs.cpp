#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "bwres/cnf.hpp"
#include "bwres/error.hpp"

namespace bwres {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

template <typename Int>
bool parse_int(std::string_view word, Int& out) {
  const char* first = word.data();
  if (!word.empty() && word.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, word.data() + word.size(), out);
  return ec == std::errc() && ptr == word.data() + word.size();
}

}  // namespace

DimacsResult parse_dimacs(std::string_view text) {
  DimacsResult result;
  bool have_header = false;
  std::vector<int> pending;
  bool in_clause = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words.front().front() == 'c') continue;
    // SATLIB-style end marker.
    if (words.front() == "%") break;

    const std::string where = "line " + std::to_string(line_no);
    if (words.front() == "p") {
      if (have_header) throw Error(ErrorKind::MalformedHeader, where + ": second header");
      std::uint32_t nvars = 0;
      std::size_t nclauses = 0;
      if (words.size() != 4 || words[1] != "cnf" || !parse_int(words[2], nvars) ||
          !parse_int(words[3], nclauses) ||
          nvars > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
        throw Error(ErrorKind::MalformedHeader, where + ": expected 'p cnf <nvars> <nclauses>'");
      have_header = true;
      result.formula = CnfFormula(nvars);
      result.declared_clauses = nclauses;
      continue;
    }
    if (!have_header) throw Error(ErrorKind::MalformedHeader, where + ": clause before header");

    for (auto w : words) {
      int lit = 0;
      if (!parse_int(w, lit))
        throw Error(ErrorKind::MalformedHeader,
                    where + ": unexpected token '" + std::string(w) + "'");
      if (lit == 0) {
        result.formula.add(Clause::from_dimacs(pending));
        ++result.read_clauses;
        pending.clear();
        in_clause = false;
        continue;
      }
      const long long mag = lit < 0 ? -static_cast<long long>(lit) : lit;
      if (mag > result.formula.num_vars())
        throw Error(ErrorKind::VariableOutOfRange,
                    where + ": literal " + std::to_string(lit) + " exceeds declared " +
                        std::to_string(result.formula.num_vars()) + " variables");
      pending.push_back(lit);
      in_clause = true;
    }
  }

  if (!have_header) throw Error(ErrorKind::MalformedHeader, "missing 'p cnf' header");
  if (in_clause) throw Error(ErrorKind::UnterminatedClause, "end of input inside a clause");
  result.clause_count_mismatch = result.read_clauses != result.declared_clauses;
  return result;
}

DimacsResult parse_dimacs(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_dimacs(std::string_view(text));
}

DimacsResult read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& os, const CnfFormula& f) {
  os << "p cnf " << f.num_vars() << ' ' << f.size() << '\n';
  for (const auto& c : f.clauses()) os << c << '\n';
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

Clause parse_clause_literals(std::string_view text) {
  std::vector<int> lits;
  bool terminated = false;
  for (auto w : split_words(text)) {
    if (terminated) throw Error(ErrorKind::MalformedHeader, "tokens after terminating 0");
    int lit = 0;
    if (!parse_int(w, lit))
      throw Error(ErrorKind::MalformedHeader, "bad literal '" + std::string(w) + "'");
    if (lit == 0)
      terminated = true;
    else
      lits.push_back(lit);
  }
  return Clause::from_dimacs(lits);
}

}  // namespace bwres
