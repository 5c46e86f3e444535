#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricdef {

// Dispatch one command line (without the program name). Returns the process
// exit status: 0 success, 1 corpus expectation mismatch, 2 input validation
// failure, 3 resource guard exceeded.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace toricdef
