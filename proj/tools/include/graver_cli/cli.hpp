#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graver::cli {

/// Entry point of the `graver` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on a failed check or runtime error, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graver::cli
