#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anw::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kThreshold = 2 };

/// Runs one `anw` command line. Normal output goes to `out`; failures are
/// reported on `err` as a single-line JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anw::cli
