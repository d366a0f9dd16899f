#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crp {

/// Runs one CLI invocation (arguments exclude the program name) and writes the
/// report to `out`. Exit codes: 0 success, 1 usage error, 2 computation error
/// (validation, parsing, budget).
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crp
