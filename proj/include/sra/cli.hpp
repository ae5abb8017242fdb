#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sra::cli {

// Dispatches one subcommand.  Exit codes: 0 success, 1 domain error
// (machine-readable JSON error object on stdout), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sra::cli
