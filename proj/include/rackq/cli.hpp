#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rackq::cli {

// Full CLI entry point, callable in-process for tests. Reads rack files given
// as paths or "-" (stdin), writes the JSON report to `out` (or the --json
// path) and diagnostics to `err`. Exit codes: 0 ok, 2 parse error, 3
// validation error, 4 resource cap, 5 internal invariant violation.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

int run_main(int argc, char** argv);

} // namespace rackq::cli
