#pragma once

#include <ostream>

namespace esos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNearPole = 3;

// Oracle and F-basis routes build 2^{N+1}-dimensional operators.
inline constexpr int kDenseSiteCap = 12;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace esos::cli
