#ifndef CYCLESIM_TOOLS_CLI_H
#define CYCLESIM_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclesim::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kCapacity = 2,
    kCrossCheck = 3,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cyclesim::cli

#endif
