#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oml {

// Runs the command line front end on the given arguments (program name
// excluded). Reports go to `out`, usage errors to `err`. Returns the
// process exit code: 0 all holds/expected, 1 violation found, 2 usage or
// format error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace oml
