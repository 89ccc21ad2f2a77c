#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramana {

/// Runs the command line tool. Exit codes: 0 success / feasible / valid,
/// 2 infeasible / invalid / failed golden check, 1 error.
int CliMain(int argc, const char* const* argv);

/// Same, with the arguments (excluding the program name) and streams given
/// explicitly.
int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramana
