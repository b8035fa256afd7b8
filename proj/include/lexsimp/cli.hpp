#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexsimp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;  ///< configuration or resource problem
inline constexpr int kExitData = 2;    ///< input data failed validation

/// Entry point behind the `lexsimp` binary. `args` excludes the program name.
/// Results go to --out (written only on success) or to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexsimp::cli
