#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rpart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecision = 3;
inline constexpr int kExitFailure = 4;  // certification mismatch or failed verify check

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rpart::cli
