#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "windres/power_model.hpp"
#include "windres/types.hpp"

namespace windres {

/// One observation row; `speed` is empty for missing values.
struct RawRecord {
  std::int64_t timestamp = 0;
  std::optional<double> speed;
};

/// Column selection and missing-value handling for observation CSVs.
struct CsvConfig {
  std::string timestamp_column = "timestamp";
  std::string speed_column = "wind_speed_mps";
  std::vector<std::string> missing_sentinels = {"", "NaN", "-999"};
};

std::vector<RawRecord> parse_csv(const std::filesystem::path& path, const CsvConfig& config = {});
std::vector<RawRecord> parse_csv(std::istream& in, const CsvConfig& config,
                                 const std::string& source_name);

struct ExcludedDay {
  std::int64_t day_index = 0;
  std::string date;    // YYYY-MM-DD
  std::string reason;  // "missing_observations" or "cadence_violation"
};

struct CompleteDaysResult {
  WindSeries series;
  std::vector<ExcludedDay> excluded;
  std::size_t days_retained = 0;
};

/// Keeps only UTC days with a full set of non-missing observations at the
/// expected cadence and concatenates them, in time order, into one raw
/// WindSeries. Days may be non-contiguous; the series records the start
/// of the first retained day.
CompleteDaysResult filter_complete_days(const std::vector<RawRecord>& records,
                                        std::int64_t expected_step);

/// Reads a two-column `wind_speed_mps,power_kw` CSV into a validated curve.
PowerCurve load_power_curve(const std::filesystem::path& path);

}  // namespace windres
