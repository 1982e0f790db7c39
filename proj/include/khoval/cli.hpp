#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace khoval {

// Full CLI entry point; args exclude the program name. Returns the process
// exit code (0 ok, 1 failed check, 2 parse error, 3 not applicable, 4 budget).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace khoval
