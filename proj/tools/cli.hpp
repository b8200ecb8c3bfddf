#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace whcone {

/// Exit codes: 0 success, 1 rejection or failed verification, 2 malformed input, 3 cap or budget abort, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace whcone
