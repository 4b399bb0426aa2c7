#pragma once

// Command-line front end. Exit codes: 0 success or True, 2 mathematical False,
// 3 Unknown, 1 usage or computation error.

#include <iosfwd>
#include <string>
#include <vector>

namespace a1 {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace a1
