#include "windres/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "csv_util.hpp"
#include "windres/time_util.hpp"

namespace windres {

namespace {

bool parse_double(const std::string& field, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return end == field.c_str() + field.size() && end != field.c_str() && errno != ERANGE;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const std::string& source_name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    fail(errc::parse_error, "column '" + name + "' not found in header of " + source_name);
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::vector<RawRecord> parse_csv(const std::filesystem::path& path, const CsvConfig& config) {
  auto in = detail::open_input(path.string());
  return parse_csv(in, config, path.string());
}

std::vector<RawRecord> parse_csv(std::istream& in, const CsvConfig& config,
                                 const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(errc::parse_error, "missing header row in " + source_name);
  }
  detail::normalize_line(line);
  const auto header = detail::split_csv_line(line);
  const std::size_t ts_col = find_column(header, config.timestamp_column, source_name);
  const std::size_t speed_col = find_column(header, config.speed_column, source_name);

  std::vector<RawRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    detail::normalize_line(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() <= std::max(ts_col, speed_col)) {
      fail_at(errc::parse_error,
              "line " + std::to_string(line_no) + " of " + source_name + " has too few columns",
              line_no);
    }
    RawRecord record;
    const auto ts = parse_iso8601(fields[ts_col]);
    if (!ts) {
      fail_at(errc::parse_error,
              "bad timestamp '" + fields[ts_col] + "' at line " + std::to_string(line_no) + " of " +
                  source_name,
              line_no);
    }
    record.timestamp = *ts;
    if (!records.empty() && record.timestamp <= records.back().timestamp) {
      fail_at(errc::non_monotonic_timestamp,
              "timestamp at line " + std::to_string(line_no) + " of " + source_name +
                  " does not increase",
              line_no);
    }
    const std::string& field = fields[speed_col];
    const bool missing = std::find(config.missing_sentinels.begin(), config.missing_sentinels.end(),
                                   field) != config.missing_sentinels.end();
    if (!missing) {
      double value = 0;
      if (!parse_double(field, value)) {
        fail_at(errc::parse_error,
                "bad speed '" + field + "' at line " + std::to_string(line_no) + " of " + source_name,
                line_no);
      }
      if (std::isnan(value)) {
        record.speed = std::nullopt;  // literal nan outside the sentinel list
      } else {
        record.speed = value;
      }
    }
    records.push_back(record);
  }
  return records;
}

CompleteDaysResult filter_complete_days(const std::vector<RawRecord>& records,
                                        std::int64_t expected_step) {
  if (expected_step <= 0 || kSecondsPerDay % expected_step != 0) {
    fail(errc::invalid_step,
         "expected step " + std::to_string(expected_step) + " s must divide 86400 s exactly");
  }
  const std::size_t per_day = static_cast<std::size_t>(kSecondsPerDay / expected_step);

  struct DayBucket {
    std::vector<std::pair<std::int64_t, double>> on_grid;  // (offset, speed)
    std::size_t missing = 0;
    std::size_t off_grid = 0;
  };
  std::map<std::int64_t, DayBucket> days;
  for (const auto& record : records) {
    const std::int64_t day = utc_day_index(record.timestamp);
    const std::int64_t offset = record.timestamp - day * kSecondsPerDay;
    auto& bucket = days[day];
    if (offset % expected_step != 0) {
      ++bucket.off_grid;
    } else if (!record.speed) {
      ++bucket.missing;
    } else {
      bucket.on_grid.emplace_back(offset, *record.speed);
    }
  }

  CompleteDaysResult result;
  std::vector<double>& values = result.series.values;
  bool have_start = false;
  for (auto& [day, bucket] : days) {
    std::sort(bucket.on_grid.begin(), bucket.on_grid.end());
    bool duplicate = false;
    for (std::size_t i = 1; i < bucket.on_grid.size(); ++i) {
      if (bucket.on_grid[i].first == bucket.on_grid[i - 1].first) duplicate = true;
    }
    // On-grid offsets are multiples of the step in [0, 86400); a full
    // distinct set of size per_day is exactly the daily grid.
    if (bucket.off_grid > 0 || duplicate) {
      result.excluded.push_back({day, format_utc_date(day), "cadence_violation"});
      continue;
    }
    if (bucket.missing > 0 || bucket.on_grid.size() != per_day) {
      result.excluded.push_back({day, format_utc_date(day), "missing_observations"});
      continue;
    }
    if (!have_start) {
      result.series.start_time = day * kSecondsPerDay;
      have_start = true;
    }
    for (const auto& entry : bucket.on_grid) values.push_back(entry.second);
    ++result.days_retained;
  }
  if (result.days_retained == 0) {
    fail(errc::no_complete_days, "no day passed the completeness filter");
  }
  result.series.step = expected_step;
  result.series.source_step = expected_step;
  result.series.provenance = Provenance::raw;
  return result;
}

PowerCurve load_power_curve(const std::filesystem::path& path) {
  auto in = detail::open_input(path.string());
  std::string line;
  if (!std::getline(in, line)) {
    fail(errc::parse_error, "missing header row in " + path.string());
  }
  detail::normalize_line(line);
  const auto header = detail::split_csv_line(line);
  if (header.size() < 2 || header[0] != "wind_speed_mps" || header[1] != "power_kw") {
    fail(errc::parse_error,
         "power curve header must be 'wind_speed_mps,power_kw' in " + path.string());
  }
  PowerCurve curve;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    detail::normalize_line(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    double speed = 0, power = 0;
    if (fields.size() < 2 || !parse_double(fields[0], speed) || !parse_double(fields[1], power)) {
      fail_at(errc::parse_error,
              "bad power curve row at line " + std::to_string(line_no) + " of " + path.string(),
              line_no);
    }
    curve.speeds.push_back(speed);
    curve.powers.push_back(power);
  }
  validate_curve(curve);
  return curve;
}

}  // namespace windres
