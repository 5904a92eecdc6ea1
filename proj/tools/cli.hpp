#pragma once

#include <iosfwd>

namespace volterra::cli {

// Exit codes: 0 success / converged, 1 input error, 2 hypothesis failure or
// non-convergence.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kNotSatisfied = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace volterra::cli
