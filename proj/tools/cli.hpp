#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plaus::cli {

// Runs one `plaus` invocation (arguments without the program name) and
// returns the process exit status. Errors are reported on `err` as a single
// line: error: kind=<kind> [name=<id>] message=<text>.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plaus::cli
