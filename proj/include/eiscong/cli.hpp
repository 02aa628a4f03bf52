#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eiscong {

enum ExitCode : int {
  kExitOk = 0,
  kExitNotEstablished = 1,
  kExitUsage = 2,
  kExitUnsupportedField = 3,
  kExitSingular = 4,
  kExitBudget = 5,
  kExitInternal = 6,
};

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eiscong
