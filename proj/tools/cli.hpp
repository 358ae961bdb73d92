#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wcomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInvalid = 2;

/// Environment variable naming the default cache directory; --cache overrides it.
inline constexpr const char* kCacheEnv = "WCOMP_CACHE_DIR";

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcomp::cli
