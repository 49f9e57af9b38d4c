#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gruss::cli {

/// Runs one gruss_lab invocation. Exit codes: 0 all asserted checks pass,
/// 1 numeric failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gruss::cli
