#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kanon::cli {

/// Exit codes: 0 success, 1 usage or input error, 2 budget unachievable,
/// 3 self-test mismatch.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kanon::cli
