#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uag {

// Batch front end. args excludes the program name. Returns the process exit
// status: 0 success, 1 domain error (a structured error object is printed to
// out), 2 usage error (message on err).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uag
