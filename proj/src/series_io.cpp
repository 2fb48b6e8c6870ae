#include "windres/series_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "csv_util.hpp"
#include "windres/json_out.hpp"
#include "windres/time_util.hpp"

namespace windres {

namespace {

std::string meta_value(std::istream& in, const std::string& expected_key,
                       const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(errc::parse_error, "truncated series header in " + source_name);
  }
  detail::normalize_line(line);
  const auto fields = detail::split_csv_line(line);
  if (fields.size() != 2 || fields[0] != expected_key) {
    fail(errc::parse_error,
         "expected '" + expected_key + ",<value>' in series header of " + source_name);
  }
  return fields[1];
}

}  // namespace

WindSeries read_series_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path.string());
  return read_series_csv(in, path.string());
}

WindSeries read_series_csv(std::istream& in, const std::string& source_name) {
  WindSeries series;
  const std::string start = meta_value(in, "start_time", source_name);
  const auto ts = parse_iso8601(start);
  if (!ts) fail(errc::parse_error, "bad start_time '" + start + "' in " + source_name);
  series.start_time = *ts;

  const std::string step = meta_value(in, "step_seconds", source_name);
  errno = 0;
  char* end = nullptr;
  series.step = std::strtoll(step.c_str(), &end, 10);
  if (end != step.c_str() + step.size() || series.step <= 0 || errno == ERANGE) {
    fail(errc::parse_error, "bad step_seconds '" + step + "' in " + source_name);
  }
  series.source_step = series.step;

  const std::string prov = meta_value(in, "provenance", source_name);
  const auto provenance = provenance_from_name(prov);
  if (!provenance) fail(errc::parse_error, "bad provenance '" + prov + "' in " + source_name);
  series.provenance = *provenance;

  std::string line;
  if (!std::getline(in, line)) {
    fail(errc::parse_error, "missing column header in " + source_name);
  }
  detail::normalize_line(line);
  if (line != "wind_speed_mps") {
    fail(errc::parse_error, "series column header must be 'wind_speed_mps' in " + source_name);
  }
  std::size_t line_no = 4;
  while (std::getline(in, line)) {
    ++line_no;
    detail::normalize_line(line);
    if (line.empty()) continue;
    errno = 0;
    end = nullptr;
    const double value = std::strtod(line.c_str(), &end);
    if (end != line.c_str() + line.size() || end == line.c_str() || errno == ERANGE) {
      fail_at(errc::parse_error,
              "bad value at line " + std::to_string(line_no) + " of " + source_name, line_no);
    }
    series.values.push_back(value);
  }
  return series;
}

void write_series_csv(const std::filesystem::path& path, const WindSeries& series) {
  auto out = detail::open_output(path.string());
  write_series_csv(out, series);
  if (!out) fail(errc::io_error, "failed writing '" + path.string() + "'");
}

void write_series_csv(std::ostream& out, const WindSeries& series) {
  out << "start_time," << format_iso8601(series.start_time) << "\n";
  out << "step_seconds," << series.step << "\n";
  out << "provenance," << provenance_name(series.provenance) << "\n";
  out << "wind_speed_mps\n";
  for (const double v : series.values) out << format_double(v) << "\n";
}

}  // namespace windres
