#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oudw {

/// Command-line dispatch. Returns the process exit code: 0 on success, 1 on
/// usage or validation errors, 2 on degenerate-data failures. A test
/// rejection is a regular result, not an error. When --seed is absent the
/// OUDW_SEED environment variable, then 1, supplies the default.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace oudw
