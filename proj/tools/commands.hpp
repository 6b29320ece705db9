#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sixth::cli {

/// Runs one invocation; args exclude the program name. Returns the exit
/// code: 0 success, 1 usage error, 2 numerical or invariant failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sixth::cli
