#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contact_focus::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kNumerical = 3 };

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contact_focus::cli
