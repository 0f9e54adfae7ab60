#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpic {

/// Entry point shared by the gpic executable and the CLI tests.
/// Exit codes: 0 success, 1 verification failures, 2 input errors,
/// 3 budget exceeded, 4 internal errors.  Diagnostics go to `err` as
/// single lines with an `error:<code>:` prefix.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gpic
