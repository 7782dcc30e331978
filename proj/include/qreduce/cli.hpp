#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qreduce/types.hpp"

// Command-line front end. Kept as a library function so tests can drive it
// in-process; the `qreduce` binary is a two-line wrapper.
namespace qreduce {

// Parses `args` (program name excluded) and runs the requested subcommand,
// writing results to `out` and diagnostics to `err`. Never calls exit().
// Return value is the process exit code:
//   0 success (including --help)
//   2 argument / configuration errors
//   3 resource limits (register too large, unwritable output, ...)
//   4 internal invariant violations
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "start:stop:count" (inclusive, count >= 1) or a single number. With
// log_spaced, points are geometric (endpoints must be positive).
std::vector<Real> parse_grid(const std::string& text, bool log_spaced);

}  // namespace qreduce
