#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbp::cli {

enum ExitCode : int {
  ok = 0,
  negative = 1, // infeasible input, failed verification or decision "no"
  usage = 2,
  io = 3,
  timeout = 4, // time limit hit before any solution was found
};

/// args[0] is the program name.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int cli_main(int argc, char **argv);

} // namespace gbp::cli
