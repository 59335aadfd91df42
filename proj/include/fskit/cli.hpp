#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fskit {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitOverflow = 3,
  kExitCollapse = 10,
};

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace fskit
