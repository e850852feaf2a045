#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qedens::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 when a numeric check fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace qedens::cli
