#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitLowTemperature = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one CLI invocation. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pstar::cli
