#include "windres/time_util.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace windres {

// Howard Hinnant's public-domain civil calendar algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) noexcept {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);                    // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;          // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                   // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) noexcept {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);                 // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;   // [0, 399]
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                 // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                      // [0, 11]
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

namespace {

bool read_uint(std::string_view s, std::size_t& pos, std::size_t digits, long& out) {
  if (pos + digits > s.size()) return false;
  long v = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += digits;
  out = v;
  return true;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view s) noexcept {
  std::size_t pos = 0;
  long year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  bool negative_year = false;
  if (!s.empty() && s[0] == '-') {
    negative_year = true;
    ++pos;
  }
  if (!read_uint(s, pos, 4, year)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!read_uint(s, pos, 2, month)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!read_uint(s, pos, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
    ++pos;
    if (!read_uint(s, pos, 2, hour)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!read_uint(s, pos, 2, minute)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') {
      ++pos;
      if (!read_uint(s, pos, 2, second)) return std::nullopt;
      if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  }
  std::int64_t offset = 0;
  if (pos < s.size()) {
    const char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      const int sign = c == '+' ? 1 : -1;
      ++pos;
      long oh = 0, om = 0;
      if (!read_uint(s, pos, 2, oh)) return std::nullopt;
      if (pos < s.size() && s[pos] == ':') ++pos;
      if (pos < s.size()) {
        if (!read_uint(s, pos, 2, om)) return std::nullopt;
      }
      offset = sign * (oh * 3600 + om * 60);
    }
  }
  if (pos != s.size()) return std::nullopt;
  const std::int64_t days = days_from_civil(static_cast<int>(negative_year ? -year : year),
                                            static_cast<unsigned>(month),
                                            static_cast<unsigned>(day));
  return days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(std::int64_t t) {
  const std::int64_t day = utc_day_index(t);
  std::int64_t rem = t - day * kSecondsPerDay;
  int year = 0;
  unsigned month = 0, dom = 0;
  civil_from_days(day, year, month, dom);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", year, month, dom,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::int64_t utc_day_index(std::int64_t t) noexcept {
  std::int64_t q = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) --q;
  return q;
}

std::string format_utc_date(std::int64_t day_index) {
  int year = 0;
  unsigned month = 0, day = 0;
  civil_from_days(day_index, year, month, day);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
  return buf;
}

std::optional<std::int64_t> parse_duration(std::string_view s) noexcept {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  std::int64_t value = 0;
  bool any = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    value = value * 10 + (s[pos] - '0');
    any = true;
    ++pos;
  }
  if (!any) return std::nullopt;
  const std::string_view unit = s.substr(pos);
  std::int64_t scale = 0;
  if (unit == "s" || unit == "sec" || unit == "") scale = 1;
  else if (unit == "min" || unit == "m") scale = 60;
  else if (unit == "h" || unit == "hr") scale = 3600;
  else if (unit == "d" || unit == "day") scale = kSecondsPerDay;
  else return std::nullopt;
  if (value <= 0) return std::nullopt;
  return value * scale;
}

}  // namespace windres
