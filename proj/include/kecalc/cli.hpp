#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kecalc::cli {

/**
 * Runs one subcommand against the supplied argument list (without the
 * program name) and writes results to out / errors to err.  Returns the
 * process exit code: 0 on success, 1 on a validation or usage error, 2 on
 * a numerical failure.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kecalc::cli
