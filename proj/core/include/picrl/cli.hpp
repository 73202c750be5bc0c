#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picrl::cli {

// Subcommand dispatch: train, evaluate, compare, bench.
// Exit codes: 0 success, 2 configuration error, 3 runtime fault.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace picrl::cli
