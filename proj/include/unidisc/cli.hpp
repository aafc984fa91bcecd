#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unidisc {

/// Command-line front end.  args excludes the program name.  Returns the
/// process exit code: 0 success, 1 input/usage error, 2 a theorem-guaranteed
/// check reported violations (a bug signal, not a finding).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unidisc
