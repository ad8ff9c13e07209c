#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dawsched::cli {

enum exit_code : int {
    success = 0,
    internal_failure = 1,
    input_error = 2,
    routing_error = 3,
    size_limit = 4,
};

// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dawsched::cli
