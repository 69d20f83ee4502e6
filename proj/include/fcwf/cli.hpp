#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcwf {

// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_yes = 0,
    exit_no = 1,
    exit_input_error = 2,
    exit_inconclusive = 3,
};

// Runs the fcwf tool on args (without the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fcwf
