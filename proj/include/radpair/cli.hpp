#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace radpair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;

// args[0] is the subcommand. Data goes to `out` unless the config names a
// file; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radpair::cli
