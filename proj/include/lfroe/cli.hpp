#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfroe::cli {

enum exit_code : int {
    ok = 0,
    check_failed = 1,
    malformed = 2,
    exhausted = 3,
    precondition = 4,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`; an input path of "-" reads `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace lfroe::cli
