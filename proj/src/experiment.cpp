#include "bwres/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "bwres/absorption.hpp"
#include "bwres/error.hpp"
#include "bwres/rng.hpp"

namespace bwres {

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::ChainUnsat: return "chain";
    case FamilyKind::ChainSat: return "chain-sat";
    case FamilyKind::Pigeonhole: return "php";
    case FamilyKind::RandomKcnf: return "random";
  }
  return "?";
}

std::string FormulaFamily::params() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::ChainUnsat:
    case FamilyKind::ChainSat: os << "n=" << n; break;
    case FamilyKind::Pigeonhole: os << "p=" << p; break;
    case FamilyKind::RandomKcnf: os << "n=" << n << " m=" << m << " k=" << k << " seed=" << seed; break;
  }
  return os.str();
}

namespace {

Literal pos(std::uint32_t v) { return Literal(Variable{v}, true); }
Literal neg(std::uint32_t v) { return Literal(Variable{v}, false); }

CnfFormula chain(std::uint32_t n, bool with_units) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "chain needs n >= 1");
  CnfFormula f(n);
  if (with_units) f.add(Clause{pos(1)});
  for (std::uint32_t i = 1; i < n; ++i) f.add(Clause{neg(i), pos(i + 1)});
  if (with_units) f.add(Clause{neg(n)});
  return f;
}

CnfFormula pigeonhole(std::uint32_t p) {
  if (p < 2) throw Error(ErrorKind::InvalidParameters, "pigeonhole needs p >= 2");
  const std::uint32_t holes = p - 1;
  CnfFormula f(p * holes);
  for (std::uint32_t i = 1; i <= p; ++i) {
    std::vector<Literal> lits;
    for (std::uint32_t j = 1; j <= holes; ++j) lits.emplace_back(php_var(p, i, j), true);
    f.add(Clause(std::move(lits)));
  }
  for (std::uint32_t j = 1; j <= holes; ++j)
    for (std::uint32_t i = 1; i <= p; ++i)
      for (std::uint32_t i2 = i + 1; i2 <= p; ++i2)
        f.add(Clause{Literal(php_var(p, i, j), false), Literal(php_var(p, i2, j), false)});
  return f;
}

CnfFormula random_kcnf(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t seed) {
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidParameters, "random k-CNF needs 1 <= k <= n");
  // Distinct clauses available: C(n, k) 2^k, capped to avoid overflow.
  double available = std::ldexp(1.0, static_cast<int>(std::min<std::uint32_t>(k, 60)));
  for (std::uint32_t i = 0; i < k; ++i) available *= static_cast<double>(n - i) / (i + 1);
  if (static_cast<double>(m) > available)
    throw Error(ErrorKind::InvalidParameters, "more clauses requested than exist");

  Rng rng(seed);
  CnfFormula f(n);
  std::vector<std::uint32_t> vars(n);
  while (f.size() < m) {
    std::iota(vars.begin(), vars.end(), 1u);
    std::vector<Literal> lits;
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = i + rng.below(n - i);
      std::swap(vars[i], vars[j]);
      lits.emplace_back(Variable{vars[i]}, rng.coin());
    }
    f.add(Clause(std::move(lits)));
  }
  return f;
}

}  // namespace

CnfFormula generate_formula(const FormulaFamily& family) {
  switch (family.kind) {
    case FamilyKind::ChainUnsat: return chain(family.n, true);
    case FamilyKind::ChainSat: return chain(family.n, false);
    case FamilyKind::Pigeonhole: return pigeonhole(family.p);
    case FamilyKind::RandomKcnf: return random_kcnf(family.n, family.m, family.k, family.seed);
  }
  throw Error(ErrorKind::InvalidParameters, "unknown family");
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
  return r;
}

// Auto width search stops once the clause space gets this large.
constexpr std::uint64_t kAutoWidthSpace = 20000;

}  // namespace

std::optional<CertifiedBound> certify_bound(const CnfFormula& f, const SolverConfig& config,
                                            std::optional<std::size_t> width) {
  std::optional<Refutation> proof;
  if (width) {
    proof = saturate_bounded_width(f, *width).refutation;
  } else {
    const std::uint64_t n = std::max<std::uint64_t>(f.num_vars(), 2);
    for (std::size_t w = 1; w <= f.num_vars() || w == 1; ++w) {
      if (w > 1 && clause_space_size(n, w) > kAutoWidthSpace) break;
      proof = saturate_bounded_width(f, w).refutation;
      if (proof) break;
    }
  }
  if (!proof) return std::nullopt;

  CertifiedBound b;
  b.kind = config.scheme == Scheme::Decision ? BoundKind::DecisionScheme
                                             : BoundKind::AssertingScheme;
  b.m = proof->length();
  // The bound needs k >= 1 even when the refutation is just the empty axiom.
  b.k = std::max<std::uint64_t>(proof->width(), 1);
  b.n = f.num_vars();
  b.scale = saturating_mul(config.restart_interval, config.random_decision_period);
  const BoundQuery q{b.kind, b.m, b.n, b.k};
  b.value = simulation_bound(q) * static_cast<double>(b.scale);
  b.ceiling = saturating_mul(simulation_bound_ceiling(q), b.scale);
  return b;
}

std::uint64_t width_only_ceiling(std::uint64_t n, std::uint64_t k) {
  return simulation_bound_ceiling(BoundQuery{BoundKind::WidthOnly, 0, n, k});
}

std::uint64_t nearest_rank(std::vector<std::uint64_t> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

TrialsResult run_trials(const CnfFormula& f, const SolverConfig& config, std::uint64_t trials,
                        std::uint64_t base_seed, const TrialOptions& options) {
  if (trials == 0) throw Error(ErrorKind::InvalidTrialCount, "at least one trial is required");
  config.validate();

  TrialsResult out;
  out.summary.bound = certify_bound(f, config, options.width);
  if (!out.summary.bound && options.require_bound)
    throw Error(ErrorKind::BoundUnavailable, "no bounded-width refutation certified");

  SolverConfig base = config;
  if (out.summary.bound) base.max_conflicts = out.summary.bound->ceiling;

  out.records.resize(trials);
  std::atomic<std::uint64_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto trial_loop = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) {
      SolverConfig c = base;
      c.seed = base_seed + i;
      const Verdict v = solve(f, c);
      TrialRecord& r = out.records[i];
      r.trial = i;
      r.seed = c.seed;
      r.verdict = v.outcome;
      r.conflicts = v.stats.conflicts;
      r.restarts = v.stats.restarts;
      r.decisions = v.stats.decisions;
      if (out.summary.bound) {
        r.bound = out.summary.bound->ceiling;
        r.within_bound = v.outcome == Outcome::Unsat && r.conflicts <= *r.bound;
      }
    }
  };
  auto worker = [&] {
    try {
      trial_loop();
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentSummary& s = out.summary;
  s.family = options.family;
  s.params = options.params;
  s.scheme = config.scheme;
  s.trials = trials;
  std::vector<std::uint64_t> conflicts;
  for (const auto& r : out.records) {
    if (r.within_bound.value_or(false)) ++s.successes;
    conflicts.push_back(r.conflicts);
  }
  s.fraction = static_cast<double>(s.successes) / static_cast<double>(trials);
  s.p50_conflicts = nearest_rank(conflicts, 0.5);
  s.p90_conflicts = nearest_rank(conflicts, 0.9);
  return out;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << "trial,seed,verdict,conflicts,restarts,decisions,bound,within_bound\n";
  for (const auto& r : records) {
    os << r.trial << ',' << r.seed << ',' << to_string(r.verdict) << ',' << r.conflicts << ','
       << r.restarts << ',' << r.decisions << ',';
    if (r.bound) os << *r.bound;
    else os << "NA";
    os << ',';
    if (r.within_bound) os << (*r.within_bound ? 1 : 0);
    else os << "NA";
    os << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<ExperimentSummary>& rows) {
  os << "family,params,scheme,trials,successes,fraction,p50_conflicts,p90_conflicts\n";
  for (const auto& s : rows) {
    char fraction[32];
    std::snprintf(fraction, sizeof fraction, "%.4f", s.fraction);
    os << s.family << ',' << s.params << ',' << to_string(s.scheme) << ',' << s.trials << ','
       << s.successes << ',' << fraction << ',' << s.p50_conflicts << ',' << s.p90_conflicts
       << '\n';
  }
}

// ---------------------------------------------------------------------------

AbsorptionTrack track_absorption(const CnfFormula& f, const Clause& target,
                                 const SolverConfig& config, std::uint64_t max_restarts) {
  if (target.empty())
    throw Error(ErrorKind::PreconditionViolated, "target clause must be non-empty");
  AbsorptionTrack out;
  if (absorbed(f.num_vars(), f.clauses(), target)) {
    out.first_index = 0;
    return out;
  }

  SolverConfig c = config;
  c.restart_interval = 1;
  Solver solver(f, c);
  solver.on_restart([&](const Solver& s) {
    if (absorbed(f.num_vars(), s.db().clauses(), target)) {
      out.first_index = s.stats().restarts;
      return false;
    }
    return s.stats().restarts < max_restarts;
  });
  const Verdict v = solver.solve();
  out.stats = v.stats;
  out.outcome = out.first_index ? Outcome::Indeterminate : v.outcome;
  // Learning the empty clause ends the run without a restart; the final
  // database absorbs everything.
  if (!out.first_index && v.outcome == Outcome::Unsat &&
      absorbed(f.num_vars(), solver.db().clauses(), target))
    out.first_index = v.stats.restarts;
  return out;
}

// ---------------------------------------------------------------------------

ExtractResult extract_model(const CnfFormula& f, std::size_t k, const ExtractOptions& options,
                            ExtractStats* stats) {
  if (k < 1) throw Error(ErrorKind::InvalidParameters, "width must be at least 1");
  if (f.max_width() > k)
    throw Error(ErrorKind::InvalidParameters,
                "formula has a clause wider than " + std::to_string(k));
  const std::uint32_t n = f.num_vars();
  ExtractStats local;
  ExtractStats& st = stats ? *stats : local;

  const std::uint64_t repeats =
      options.repeats.value_or(static_cast<std::uint64_t>(std::ceil(std::log2(std::max(n, 1u)))) + 1);
  SolverConfig config;
  config.scheme = options.scheme;
  config.max_conflicts = width_only_ceiling(std::max<std::uint64_t>(n, 2), k);
  std::uint64_t run = 0;

  // Sat or Unsat from a run is certain; only budget exhaustion is retried.
  auto probe = [&](const CnfFormula& g) {
    for (std::uint64_t r = 0; r < repeats; ++r) {
      config.seed = options.seed + run++;
      ++st.solver_runs;
      const Outcome o = solve(g, config).outcome;
      if (o != Outcome::Indeterminate) return o;
    }
    return Outcome::Indeterminate;
  };

  if (probe(f) == Outcome::Unsat) return ExtractUnsat{};

  CnfFormula g = f;
  Model model(n + 1, false);
  for (std::uint32_t v = 1; v <= n; ++v) {
    CnfFormula zero = restrict_formula(g, Literal(Variable{v}, false));
    if (probe(zero) == Outcome::Unsat) {
      ++st.flips;
      model[v] = true;
      g = restrict_formula(g, Literal(Variable{v}, true));
    } else {
      g = std::move(zero);
    }
  }
  if (!satisfies_all(f.clauses(), model))
    return ExtractInconclusive{"assignment fails verification"};
  return model;
}

}  // namespace bwres
