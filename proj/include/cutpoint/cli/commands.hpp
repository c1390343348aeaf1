#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cutpoint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertification = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args exclude the program name). The report goes
/// to `out`, diagnostics to `err`. Returns 0 on success, 1 when a
/// certification fails, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cutpoint::cli
