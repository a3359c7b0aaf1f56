#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fefflab {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitContract = 2 };

/// Runs one fefflab command line. Reports go to `out` (or to --output),
/// diagnostics to `err`. Returns 0 when every contract holds, 2 when a
/// mathematical contract is violated and 1 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fefflab
