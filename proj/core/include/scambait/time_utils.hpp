#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace scambait {

// All timestamps are UTC with second precision.
using Instant = std::chrono::sys_seconds;

// "2023-04-09T10:30:00Z"
std::string format_iso8601(Instant t);
std::optional<Instant> parse_iso8601(std::string_view text);

// RFC 5322 date-time, e.g. "Sun, 9 Apr 2023 10:30:00 +0000".
std::string format_rfc5322_date(Instant t);
std::optional<Instant> parse_rfc5322_date(std::string_view text);

inline double days_between(Instant from, Instant to) {
    return std::chrono::duration<double, std::ratio<86400>>(to - from).count();
}

inline Instant instant_from_unix(std::int64_t secs) {
    return Instant{std::chrono::seconds{secs}};
}

} // namespace scambait
