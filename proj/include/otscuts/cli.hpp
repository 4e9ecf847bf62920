#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace otscuts {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;

/// args excludes the program name. JSON goes to `out` unless a command
/// writes to a file; summaries and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otscuts
