#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace windres {

constexpr std::int64_t kSecondsPerDay = 86400;

/// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int year, unsigned month, unsigned day) noexcept;
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day) noexcept;

/// Parses an ISO-8601 timestamp into UTC seconds since the Unix epoch.
/// Accepts "2016-01-01T00:10:00", a trailing "Z", a "+HH:MM"/"-HHMM"
/// offset, a space instead of "T", and an omitted seconds field.
/// Fractional seconds are truncated. Returns nullopt on malformed input.
std::optional<std::int64_t> parse_iso8601(std::string_view text) noexcept;

/// "2016-01-01T00:10:00Z"
std::string format_iso8601(std::int64_t seconds_utc);

/// Floor division by 86400 (works for pre-1970 timestamps).
std::int64_t utc_day_index(std::int64_t seconds_utc) noexcept;

/// "2016-01-01" for a day index from utc_day_index.
std::string format_utc_date(std::int64_t day_index);

/// Parses "10min", "3h", "1d", "600s", "90s" ... into seconds.
std::optional<std::int64_t> parse_duration(std::string_view text) noexcept;

}  // namespace windres
