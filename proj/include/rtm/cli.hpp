#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rtm {

// Runs the command-line front end. Returns 0 on success, 1 on a usage error,
// 2 on a runtime error; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rtm
