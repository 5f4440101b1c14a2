#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sg {

// Command-line front end. Exit codes: 0 success / positive verdict,
// 1 negative verdict (unachievable, check failed, disagreement found),
// 2 usage or parse error, 3 resource cap exceeded.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sg
