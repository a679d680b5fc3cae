// Command-line front end. Kept in the library so tests can drive it in-process.

#ifndef GPCR_CLI_HPP_
#define GPCR_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace gpcr::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 1,
  kIoError = 2,
  kEmptyResult = 3,
  kDegenerateData = 4,
  kModelMismatch = 5,
};

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gpcr::cli

#endif
