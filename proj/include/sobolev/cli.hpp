#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sobolev::cli
{

enum ExitCode : int
{
    kSuccess   = 0,
    kFailure   = 1,
    kUsage     = 2,
    kRefusal   = 3, ///< numerical refusal, e.g. under-resolved truncation
    kViolation = 4, ///< an invariant check failed
};

/// Run the command line `args` (without the program name). Normal output goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sobolev::cli
