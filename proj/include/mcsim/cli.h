#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mcsim {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

/// Parses `argv` (program name first), runs the selected experiment, writes
/// its CSV into --out and a one-line summary to `out`. Diagnostics and the
/// list of defaulted config keys go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcsim
