#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maximin {

// Subcommands: run, experiment, complexity, lowerbound. `args` excludes the
// program name. Returns 0 on success, 1 on usage or validation errors, 2 on
// runtime failures. Results go to `out`, diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maximin
