#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ts {

// Runs one CLI command; JSON goes to out (or the --out file), returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace ts
