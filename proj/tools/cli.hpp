#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iwasawa::cli {

/** Exit codes: success, bad input (including library errors), a verification report that failed. */
enum ExitCode { kSuccess = 0, kInputError = 1, kVerificationFailed = 2 };

/** Runs one command line; argv[0] is the program name. Output goes to `out`, diagnostics to `err`. */
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace iwasawa::cli
