#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace attractor {

// Command-line dispatch; args exclude the program name. Returns the process
// exit status: 0 success, 1 failed validation, 2 usage or input errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace attractor
