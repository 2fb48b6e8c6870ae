#pragma once

#include <filesystem>
#include <iosfwd>

#include "windres/types.hpp"

namespace windres {

/// Series file format: three metadata lines, a column header, one value
/// per row. Values are written with 17 significant digits (lossless).
///
///   start_time,2016-01-01T00:00:00Z
///   step_seconds,600
///   provenance,raw
///   wind_speed_mps
///   5.2099999999999995
///
WindSeries read_series_csv(const std::filesystem::path& path);
WindSeries read_series_csv(std::istream& in, const std::string& source_name);

void write_series_csv(const std::filesystem::path& path, const WindSeries& series);
void write_series_csv(std::ostream& out, const WindSeries& series);

}  // namespace windres
