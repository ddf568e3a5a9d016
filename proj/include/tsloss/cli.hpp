#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsloss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs `tsloss <solve|sweep|validate|report> [flags]`. `args` excludes the
/// program name. Results go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tsloss::cli
