#pragma once

#include <ostream>

namespace qgossip {

/// Entry point of the `qgossip` tool. Returns the process exit code:
/// 0 success, 1 runtime failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgossip
