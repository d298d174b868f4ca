#pragma once

#include <iosfwd>

namespace ffp {

/// Entry point of the ffp command-line tool. Returns the process exit code:
/// 0 success, 2 invalid input, 3 cap or precision infeasible, 4 non-convergence.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffp
