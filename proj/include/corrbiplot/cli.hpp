#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corrbiplot::cli {

/// Runs the command line given in `args` (without the program name), writing
/// to the given streams. Returns the process exit code:
/// 0 success, 1 usage or I/O error, 2 fit did not converge.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrbiplot::cli
