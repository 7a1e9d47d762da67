#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magset::cli {

/// Runs the magset command line.  Exit codes: 0 success, 1 analysis-negative
/// result under --strict, 2 input or usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace magset::cli
