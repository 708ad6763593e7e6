#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdet {

// Runs the command line `args` (without the program name). Returns the exit
// code: 0 success, 2 usage or configuration error, 3 runtime or budget error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperdet
