#pragma once

#include <ostream>

namespace cg2a::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the cg2a command; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cg2a::cli
