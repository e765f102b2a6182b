#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "bwres/absorption.hpp"
#include "bwres/cnf.hpp"
#include "bwres/error.hpp"
#include "bwres/experiment.hpp"
#include "bwres/resolution.hpp"
#include "bwres/solver.hpp"

namespace bwres::cli {

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

const std::map<std::string, Scheme> kSchemes{{"decision", Scheme::Decision},
                                              {"1uip", Scheme::FirstUip}};

CnfFormula load(const std::string& path, std::ostream& err) {
  DimacsResult r = read_dimacs_file(path);
  if (r.clause_count_mismatch)
    err << "c warning: header declares " << r.declared_clauses << " clauses, read "
        << r.read_clauses << '\n';
  return std::move(r.formula);
}

void print_model(std::ostream& out, const Model& m) {
  out << 'v';
  for (std::size_t v = 1; v < m.size(); ++v) out << ' ' << (m[v] ? "" : "-") << v;
  out << " 0\n";
}

void print_round(std::ostream& out, const Trail& t) {
  for (const auto& e : t.entries()) {
    if (e.decision()) out << "D " << e.var.index << ' ' << int(e.value) << '\n';
    else out << "I " << e.var.index << ' ' << int(e.value) << ' ' << *e.reason << '\n';
  }
}

void open_output(std::ofstream& file, const std::string& path) {
  file.open(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidParameters, "cannot open " + path + " for writing");
}

struct SolveArgs {
  std::string file;
  Scheme scheme = Scheme::Decision;
  std::uint64_t restart_every = 1;
  std::uint64_t random_period = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_conflicts;
  std::string trace;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  SolverConfig config;
  config.scheme = a.scheme;
  config.restart_interval = a.restart_every;
  config.random_decision_period = a.random_period;
  config.seed = a.seed;
  config.max_conflicts = a.max_conflicts;
  config.validate();
  const CnfFormula f = load(a.file, err);

  std::ofstream trace;
  if (!a.trace.empty()) open_output(trace, a.trace);
  const Verdict v = solve(f, config, a.trace.empty() ? nullptr : &trace);

  out << "c conflicts " << v.stats.conflicts << " restarts " << v.stats.restarts << " decisions "
      << v.stats.decisions << " propagations " << v.stats.propagations << '\n';
  switch (v.outcome) {
    case Outcome::Sat:
      out << "s SATISFIABLE\n";
      print_model(out, *v.model);
      return kExitSat;
    case Outcome::Unsat: out << "s UNSATISFIABLE\n"; return kExitUnsat;
    case Outcome::Indeterminate: out << "s UNKNOWN\n"; return 0;
  }
  return 0;
}

int cmd_prove(const std::string& file, std::size_t width, const std::string& proof_path,
              std::ostream& out, std::ostream& err) {
  const CnfFormula f = load(file, err);
  const SaturationResult r = saturate_bounded_width(f, width);
  if (!r.refuted()) {
    out << "s SATURATED width " << width << " clauses " << r.clauses_derived;
    if (!r.excluded_wide.empty()) out << " excluded-wide " << r.excluded_wide.size();
    out << '\n';
    return 0;
  }
  const ProofCheck check = verify_refutation(f, *r.refutation);
  if (!check.valid) throw Error(ErrorKind::InternalInvariant, "emitted proof failed verification");
  out << "s REFUTED width " << check.width << " length " << check.length << '\n';
  if (!proof_path.empty()) {
    std::ofstream proof;
    open_output(proof, proof_path);
    write_refutation(proof, *r.refutation);
  }
  return 0;
}

int cmd_absorb(const std::string& file, const Clause& c, std::ostream& out, std::ostream& err) {
  const CnfFormula f = load(file, err);
  if (c.empty()) throw Error(ErrorKind::PreconditionViolated, "clause must be non-empty");
  bool all = true;
  for (Literal l : c) {
    const auto witness = absorption_witness(f.num_vars(), f.clauses(), c, l);
    out << "absorbed-at " << l.to_dimacs() << ' ' << (witness ? "no" : "yes") << '\n';
    if (witness) {
      all = false;
      print_round(out, *witness);
    }
  }
  out << "absorbed " << (all ? "yes" : "no") << '\n';
  return 0;
}

int cmd_empower(const std::string& file, const Clause& c, Literal l, std::ostream& out,
                std::ostream& err) {
  const CnfFormula f = load(file, err);
  const bool ent = entails(f.num_vars(), f.clauses(), c);
  const auto witness = absorption_witness(f.num_vars(), f.clauses(), c, l);
  out << "entailed " << (ent ? "yes" : "no") << '\n';
  out << "absorbed-at " << l.to_dimacs() << ' ' << (witness ? "no" : "yes") << '\n';
  out << "empowering " << ((ent && witness) ? "yes" : "no") << '\n';
  if (witness) print_round(out, *witness);
  return 0;
}

int cmd_beneficial(const std::string& file, const Clause& c, std::optional<int> lit,
                   const std::optional<std::string>& decisions, std::ostream& out,
                   std::ostream& err) {
  const CnfFormula f = load(file, err);
  if (!decisions) {
    const auto found = find_beneficial_round(f.num_vars(), f.clauses(), c);
    if (!found) {
      out << "beneficial none\n";
      return 0;
    }
    out << "beneficial yes at " << found->first.to_dimacs() << '\n';
    print_round(out, found->second);
    return 0;
  }
  if (!lit) throw Error(ErrorKind::InvalidParameters, "--lit is required with --decisions");
  const Literal l = Literal::from_dimacs(*lit);
  std::vector<Literal> order;
  std::istringstream in(*decisions);
  for (int d; in >> d && d != 0;) order.push_back(Literal::from_dimacs(d));
  if (in.fail() && !in.eof())
    throw Error(ErrorKind::InvalidParameters, "malformed --decisions list");
  const Trail round = build_round(f.num_vars(), f.clauses(), order);
  const BeneficialReport rep = beneficial_report(f.num_vars(), f.clauses(), c, l, round);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  print_round(out, round);
  out << "falsifies-rest " << yn(rep.falsifies_rest) << '\n'
      << "branches-in-rest " << yn(rep.branches_in_rest) << '\n'
      << "leaves-unassigned " << yn(rep.leaves_unassigned) << '\n'
      << "conclusive-when-extended " << yn(rep.conclusive_when_extended) << '\n'
      << "beneficial " << yn(rep.beneficial()) << '\n';
  return 0;
}

struct BenchArgs {
  std::string family = "chain";
  std::string file;
  std::uint32_t n = 10, m = 0, k = 3, p = 3;
  std::uint64_t formula_seed = 0;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Decision;
  std::uint64_t restart_every = 1;
  std::uint64_t random_period = 1;
  std::optional<std::size_t> width;
  unsigned threads = 0;
  std::string out_path;
  std::string summary_path;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  SolverConfig config;
  config.scheme = a.scheme;
  config.restart_interval = a.restart_every;
  config.random_decision_period = a.random_period;
  config.validate();

  TrialOptions opts;
  opts.width = a.width;
  opts.threads = a.threads;
  CnfFormula f;
  if (!a.file.empty()) {
    f = load(a.file, err);
    opts.family = "file";
    opts.params = "n=" + std::to_string(f.num_vars()) + " m=" + std::to_string(f.size());
  } else {
    FormulaFamily fam;
    if (a.family == "chain") fam = FormulaFamily::chain_unsat(a.n);
    else if (a.family == "chain-sat") fam = FormulaFamily::chain_sat(a.n);
    else if (a.family == "php") fam = FormulaFamily::pigeonhole(a.p);
    else fam = FormulaFamily::random_kcnf(a.n, a.m, a.k, a.formula_seed);
    f = generate_formula(fam);
    opts.family = std::string(to_string(fam.kind));
    opts.params = fam.params();
  }

  const TrialsResult r = run_trials(f, config, a.trials, a.seed, opts);
  if (!a.out_path.empty()) {
    std::ofstream csv;
    open_output(csv, a.out_path);
    write_trials_csv(csv, r.records);
  }
  if (a.summary_path.empty()) {
    write_summary_csv(out, {r.summary});
  } else {
    std::ofstream csv;
    open_output(csv, a.summary_path);
    write_summary_csv(csv, {r.summary});
  }
  if (r.summary.bound)
    err << "c bound " << r.summary.bound->ceiling << " (m=" << r.summary.bound->m
        << " k=" << r.summary.bound->k << ")\n";
  else
    err << "c bound NA: no bounded-width refutation certified\n";
  return 0;
}

int cmd_extract(const std::string& file, std::size_t width, const ExtractOptions& opts,
                std::ostream& out, std::ostream& err) {
  const CnfFormula f = load(file, err);
  ExtractStats stats;
  const ExtractResult r = extract_model(f, width, opts, &stats);
  out << "c solver-runs " << stats.solver_runs << " flips " << stats.flips << '\n';
  if (const Model* m = std::get_if<Model>(&r)) {
    out << "s SATISFIABLE\n";
    print_model(out, *m);
    return kExitSat;
  }
  if (std::holds_alternative<ExtractUnsat>(r)) {
    out << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  out << "s INCONCLUSIVE\n"
      << "c " << std::get<ExtractInconclusive>(r).reason << '\n';
  return 0;
}

Clause clause_arg(const std::string& positional, const std::string& flag) {
  const std::string& text = flag.empty() ? positional : flag;
  if (text.empty()) throw CLI::RequiredError("clause");
  return parse_clause_literals(text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clause learning with restarts and bounded-width resolution tools", "bwres"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string scheme_name;
  auto add_scheme = [&](CLI::App* sub, Scheme&) {
    sub->add_option("--scheme", scheme_name, "Learning scheme: decision or 1uip")
        ->check(CLI::IsMember({"decision", "1uip"}));
  };

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Run the solver on a DIMACS file");
  solve_cmd->add_option("FILE", sa.file, "DIMACS CNF file")->required();
  add_scheme(solve_cmd, sa.scheme);
  solve_cmd->add_option("--restart-every", sa.restart_every, "Restart after every N conflicts")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--random-period", sa.random_period,
                        "Every N-th round decides at random")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", sa.seed, "Random seed");
  solve_cmd->add_option("--max-conflicts", sa.max_conflicts, "Conflict budget")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace", sa.trace, "Write the event trace to PATH");

  std::string file, clause_pos, clause_flag, proof_path;
  std::size_t width = 0;
  auto* prove_cmd = app.add_subcommand("prove-width", "Search for a width-bounded refutation");
  prove_cmd->add_option("FILE", file, "DIMACS CNF file")->required();
  prove_cmd->add_option("--width", width, "Maximum clause width")->required()->check(
      CLI::NonNegativeNumber);
  prove_cmd->add_option("--proof", proof_path, "Write the refutation to PATH");

  auto* absorb_cmd = app.add_subcommand("absorb", "Per-literal absorption of a clause");
  absorb_cmd->add_option("FILE", file, "DIMACS CNF file")->required();
  absorb_cmd->add_option("CLAUSE", clause_pos, "Clause as DIMACS literals, e.g. \"1 -3 0\"");
  absorb_cmd->add_option("--clause", clause_flag, "Clause as DIMACS literals");

  int lit_pos = 0, lit_flag = 0;
  auto* empower_cmd = app.add_subcommand("empower", "1-empowerment of a clause at a literal");
  empower_cmd->add_option("FILE", file, "DIMACS CNF file")->required();
  empower_cmd->add_option("CLAUSE", clause_pos, "Clause as DIMACS literals");
  empower_cmd->add_option("LIT", lit_pos, "Literal of the clause");
  empower_cmd->add_option("--clause", clause_flag, "Clause as DIMACS literals");
  empower_cmd->add_option("--lit", lit_flag, "Literal of the clause");

  std::optional<int> ben_lit;
  std::optional<std::string> decisions;
  auto* beneficial_cmd = app.add_subcommand(
      "beneficial", "Check a round for being beneficial, or search for one");
  beneficial_cmd->add_option("FILE", file, "DIMACS CNF file")->required();
  beneficial_cmd->add_option("--clause", clause_flag, "Clause as DIMACS literals")->required();
  beneficial_cmd->add_option("--lit", ben_lit, "Literal of the clause");
  beneficial_cmd->add_option("--decisions", decisions,
                             "Decisions of the round in order, DIMACS literals");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded trials against the simulation bound");
  bench_cmd->add_option("--family", ba.family, "Formula family")
      ->check(CLI::IsMember({"chain", "chain-sat", "php", "random"}));
  bench_cmd->add_option("--file", ba.file, "Use a DIMACS file instead of a family");
  bench_cmd->add_option("--n", ba.n, "Variables (chain, random)")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--m", ba.m, "Clauses (random)");
  bench_cmd->add_option("--k", ba.k, "Clause width (random)")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--p", ba.p, "Pigeons (php)")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--formula-seed", ba.formula_seed, "Seed of the random formula");
  bench_cmd->add_option("--trials", ba.trials, "Number of trials")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", ba.seed, "Base seed; trial i uses seed + i");
  add_scheme(bench_cmd, ba.scheme);
  bench_cmd->add_option("--restart-every", ba.restart_every, "Restart after every N conflicts")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--random-period", ba.random_period, "Every N-th round decides at random")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--width", ba.width, "Refutation width to certify");
  bench_cmd->add_option("--threads", ba.threads, "Worker threads, 0 for all cores");
  bench_cmd->add_option("--out", ba.out_path, "Write per-trial CSV to PATH");
  bench_cmd->add_option("--summary", ba.summary_path, "Write summary CSV to PATH (default stdout)");

  ExtractOptions eo;
  std::optional<std::uint64_t> repeats;
  auto* extract_cmd = app.add_subcommand("extract-model", "Build a model by self-reducibility");
  extract_cmd->add_option("FILE", file, "DIMACS CNF file")->required();
  extract_cmd->add_option("--width", width, "Clause width bound")->required()->check(
      CLI::PositiveNumber);
  extract_cmd->add_option("--seed", eo.seed, "Base seed");
  extract_cmd->add_option("--repeats", repeats, "Solver runs per probe")->check(
      CLI::PositiveNumber);
  add_scheme(extract_cmd, eo.scheme);

  std::vector<const char*> argv{"bwres"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 1;
  }

  if (!scheme_name.empty()) sa.scheme = ba.scheme = eo.scheme = kSchemes.at(scheme_name);
  try {
    if (solve_cmd->parsed()) return cmd_solve(sa, out, err);
    if (prove_cmd->parsed()) return cmd_prove(file, width, proof_path, out, err);
    if (absorb_cmd->parsed()) return cmd_absorb(file, clause_arg(clause_pos, clause_flag), out, err);
    if (empower_cmd->parsed()) {
      const int lit = lit_flag != 0 ? lit_flag : lit_pos;
      if (lit == 0) throw CLI::RequiredError("lit");
      return cmd_empower(file, clause_arg(clause_pos, clause_flag), Literal::from_dimacs(lit),
                         out, err);
    }
    if (beneficial_cmd->parsed())
      return cmd_beneficial(file, clause_arg("", clause_flag), ben_lit, decisions, out, err);
    if (bench_cmd->parsed()) return cmd_bench(ba, out, err);
    if (extract_cmd->parsed()) {
      eo.repeats = repeats;
      return cmd_extract(file, width, eo, out, err);
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << app.get_subcommands().front()->help();
    return 1;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace bwres::cli
