#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "commvar/census.hpp"

namespace commvar {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

/// Runs one command (arguments without the program name). JSON goes to out,
/// summaries and errors to err. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The CountReport JSON object, pretty-printed.
std::string count_report_json(const CountReport& r);

/// Brute-scan limit: COMMVAR_MAX_BRUTE when set, otherwise 2^26.
std::uint64_t default_max_brute();

}  // namespace commvar
