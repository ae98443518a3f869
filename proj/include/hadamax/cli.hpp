#pragma once

// Command-line front end.  Subcommands: construct, verify, search-params, scheme.
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exhausted.

#include <ostream>

#include "hadamax/error.hpp"

namespace hadamax::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3 };

ExitCode exit_code_for(Errc code) noexcept;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hadamax::cli
