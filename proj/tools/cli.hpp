#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bwres::cli {

/// Runs one command line (without the program name). Exit codes: 10 for a
/// verified model, 20 for a refutation learned by the solver, 1 for usage,
/// I/O and parse errors, 0 otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwres::cli
