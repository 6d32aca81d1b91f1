#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace follower::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitScenario = 3;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace follower::cli
