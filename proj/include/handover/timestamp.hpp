#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace handover {

/// UTC instant with millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses ISO-8601 `YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM]`. The zone
/// designator is mandatory; naive timestamps return nullopt. Fractions finer
/// than a millisecond are truncated.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical UTC form: `YYYY-MM-DDTHH:MM:SSZ`, with `.mmm` only when the
/// millisecond part is non-zero.
std::string format_timestamp(Timestamp t);

/// Signed difference `later - earlier` in seconds.
inline double seconds_between(Timestamp earlier, Timestamp later) {
  return std::chrono::duration<double>(later - earlier).count();
}

inline Timestamp add_seconds(Timestamp t, double seconds) {
  return t + std::chrono::round<std::chrono::milliseconds>(std::chrono::duration<double>(seconds));
}

}  // namespace handover
