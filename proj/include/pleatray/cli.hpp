#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pleatray {

// Front end behind the pleatray binary. Takes argv without the program name.
// Exit codes: 0 success, 1 usage or I/O, 2 semantic failure, 3 numerical failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pleatray
