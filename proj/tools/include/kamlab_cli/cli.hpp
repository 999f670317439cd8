#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kamlab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // a recipe ran but missed its tolerance
  kConfigError = 2,
  kNumericalInconsistency = 3,
  kNonConvergence = 4,
  kUsage = 64,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace kamlab::cli
