#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsr {

/// Runs one CLI command (args exclude the program name). Returns the
/// process exit code: 0 on success, 1 on domain errors (bad files, invalid
/// math input), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsr
