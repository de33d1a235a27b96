#pragma once

#include <iosfwd>
#include <string_view>

namespace handover::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kInputError = 1, kUsageError = 2 };

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace handover::cli
