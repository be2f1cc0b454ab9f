#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfl {

// Runs `tfl <command> [options]` with args excluding the program name. The
// primary result goes to `out` (unless --quiet) and, with --out DIR, into
// files under DIR. Returns 0 on success, 2 for invalid input, 3 for
// numerical failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string cli_usage();

}  // namespace tfl
