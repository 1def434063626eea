// cli.hpp
//
// Command-line surface: list-targets, extract-trace, align, fuzz, bench,
// report. Factored out of main() so tests can drive it in-process.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tracefuzz {

// Returns the process exit status. Verdict-carrying commands map
// Triggered/ReachedNotTriggered/NotReached to 0/10/11; config errors
// exit 2; a stale POC exits 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tracefuzz
