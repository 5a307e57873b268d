#pragma once

#include <ostream>

namespace kth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDisagreement = 3;

/// Entry point shared by the executable and the tests. Output for a fixed
/// argument list (including --seed) is byte-identical across runs.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kth::cli
