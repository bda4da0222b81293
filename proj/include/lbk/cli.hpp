#pragma once

/// \file cli.hpp
/// \brief Command-line front end: eval, quad, verify, bench, table.
///
/// Exit codes: 0 success, 1 verification failure, 2 invalid input,
/// 3 quadrature did not converge. Results go to `out`, diagnostics to `err`.
/// Angles are radians.

#include <iosfwd>

namespace lbk {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInvalidInput = 2,
  kExitNotConverged = 3,
};

/// Environment variable capping the number of sweep worker threads.
inline constexpr const char* kWorkersEnv = "LBK_WORKERS";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lbk
