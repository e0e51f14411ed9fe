#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcval::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when a property check fails and 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcval::cli
