#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parascrape::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNothingProduced = 3 };

// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parascrape::cli
