#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grafrec {

/// Runs one CLI invocation. args excludes the program name. Reports go to
/// out, diagnostics to err. Returns the process exit code: 0 success, 1
/// validation failure, 2 usage or file-format error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace grafrec
