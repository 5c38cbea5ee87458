#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psdi::cli {

// Exit codes. SAT/UNSAT follow the DIMACS solver convention.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

/// Runs one psdi-sat command. args[0] is the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace psdi::cli
