#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cainfer {

// Runs the command-line interface on the given arguments (excluding the
// program name). Reports are written to --out or to `out`; diagnostics go to
// `err`. Returns 0 on success with conclusions, 1 on a no-conclusion analysis
// under --strict, 2 on input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cainfer
