#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpskew::cli {

/// Runs one CLI invocation.  Exit status 0 on success, 1 on a domain error
/// (the error name is printed), 2 on parse/usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qpskew::cli
