#include <doctest.h>

#include <cstdio>
#include <random>
#include <sstream>

#include "synthetic.hpp"
#include "windres/ingest.hpp"
#include "windres/json_out.hpp"
#include "windres/time_util.hpp"

using namespace windres;

namespace {

std::vector<RawRecord> parse_text(const std::string& text, const CsvConfig& config = {}) {
  std::istringstream in(text);
  return parse_csv(in, config, "test.csv");
}

/// Full day of 10-min records starting at `day_start`.
std::string day_rows(std::int64_t day_start, double speed, int skip_index = -1,
                     bool sentinel_at_skip = false) {
  std::string rows;
  for (int i = 0; i < 144; ++i) {
    if (i == skip_index && !sentinel_at_skip) continue;
    rows += format_iso8601(day_start + i * 600) + ",";
    rows += (i == skip_index) ? "-999" : format_double(speed + 0.01 * i);
    rows += "\n";
  }
  return rows;
}

constexpr std::int64_t kDay0 = 1451606400;  // 2016-01-01T00:00:00Z

}  // namespace

TEST_CASE("parse_csv reads direct rows") {
  const auto records = parse_text("timestamp,wind_speed_mps\n2016-01-01T00:00:00Z,5.2\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].timestamp == kDay0);
  CHECK(records[0].speed == 5.2);
}

TEST_CASE("parse_csv maps sentinels to missing") {
  const auto records = parse_text(
      "timestamp,wind_speed_mps\n"
      "2016-01-01T00:00:00Z,5.2\n"
      "2016-01-01T00:10:00Z,-999\n"
      "2016-01-01T00:20:00Z,NaN\n"
      "2016-01-01T00:30:00Z,\n");
  REQUIRE(records.size() == 4);
  CHECK(records[0].speed.has_value());
  CHECK_FALSE(records[1].speed.has_value());
  CHECK_FALSE(records[2].speed.has_value());
  CHECK_FALSE(records[3].speed.has_value());
}

TEST_CASE("parse_csv rejects out-of-order timestamps with the line number") {
  try {
    parse_text(
        "timestamp,wind_speed_mps\n"
        "2016-01-01T00:10:00Z,5.0\n"
        "2016-01-01T00:00:00Z,5.0\n");
    FAIL("expected NonMonotonicTimestamp");
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_monotonic_timestamp);
    CHECK(e.location() == 3);
  }
}

TEST_CASE("parse_csv rejects duplicate timestamps") {
  CHECK_THROWS_AS(parse_text("timestamp,wind_speed_mps\n"
                             "2016-01-01T00:00:00Z,5.0\n"
                             "2016-01-01T00:00:00Z,5.1\n"),
                  Error);
}

TEST_CASE("parse_csv honours the column mapping") {
  CsvConfig config;
  config.timestamp_column = "time";
  config.speed_column = "ff";
  config.missing_sentinels = {"-"};
  const auto records = parse_text(
      "station,time,ff\n"
      "x,2016-01-01T00:00:00Z,4.5\n"
      "x,2016-01-01T00:10:00Z,-\n",
      config);
  REQUIRE(records.size() == 2);
  CHECK(records[0].speed == 4.5);
  CHECK_FALSE(records[1].speed.has_value());
}

TEST_CASE("parse_csv fails on unknown columns and bad numbers") {
  CHECK_THROWS_AS(parse_text("time,speed\n2016-01-01T00:00:00Z,1\n"), Error);
  try {
    parse_text("timestamp,wind_speed_mps\n2016-01-01T00:00:00Z,fast\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(e.location() == 2);
  }
  CHECK_THROWS_AS(parse_text("timestamp,wind_speed_mps\nnot-a-time,1.0\n"), Error);
}

TEST_CASE("parse_csv round trip is lossless for non-missing values") {
  std::mt19937_64 rng(11);
  std::string text = "timestamp,wind_speed_mps\n";
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) {
    const double v = 30.0 * (static_cast<double>(rng() >> 11) * 0x1p-53);
    values.push_back(v);
    text += format_iso8601(kDay0 + i * 600) + "," + format_double(v) + "\n";
  }
  const auto records = parse_text(text);
  REQUIRE(records.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(records[i].speed == values[i]);  // exact: %.17g is lossless
  }
}

TEST_CASE("filter_complete_days keeps complete days only") {
  SUBCASE("two complete days survive") {
    const auto records = parse_text("timestamp,wind_speed_mps\n" + day_rows(kDay0, 5.0) +
                                    day_rows(kDay0 + kSecondsPerDay, 6.0));
    const auto result = filter_complete_days(records, 600);
    CHECK(result.series.size() == 288);
    CHECK(result.days_retained == 2);
    CHECK(result.excluded.empty());
    CHECK(result.series.start_time == kDay0);
    CHECK(result.series.provenance == Provenance::raw);
  }
  SUBCASE("a day with one sentinel-missing record is excluded") {
    const auto records =
        parse_text("timestamp,wind_speed_mps\n" + day_rows(kDay0, 5.0) +
                   day_rows(kDay0 + kSecondsPerDay, 6.0, 37, /*sentinel_at_skip=*/true));
    const auto result = filter_complete_days(records, 600);
    CHECK(result.series.size() == 144);
    REQUIRE(result.excluded.size() == 1);
    CHECK(result.excluded[0].date == "2016-01-02");
    CHECK(result.excluded[0].reason == "missing_observations");
  }
  SUBCASE("a day with one absent row is excluded") {
    const auto records = parse_text("timestamp,wind_speed_mps\n" + day_rows(kDay0, 5.0, 37));
    CHECK_THROWS_AS(filter_complete_days(records, 600), Error);  // the only day is incomplete
  }
  SUBCASE("all days incomplete -> NoCompleteDays") {
    const auto records = parse_text("timestamp,wind_speed_mps\n2016-01-01T00:00:00Z,5.0\n");
    CHECK_THROWS_WITH_AS(filter_complete_days(records, 600), doctest::Contains("NoCompleteDays"),
                         Error);
  }
}

TEST_CASE("filter_complete_days flags cadence violations") {
  // 144 values but one of them off the 600 s grid
  std::string rows;
  for (int i = 0; i < 144; ++i) {
    const std::int64_t ts = kDay0 + i * 600 + (i == 50 ? 30 : 0);
    rows += format_iso8601(ts) + ",5.0\n";
  }
  const auto records =
      parse_text("timestamp,wind_speed_mps\n" + rows + day_rows(kDay0 + kSecondsPerDay, 6.0));
  const auto result = filter_complete_days(records, 600);
  CHECK(result.days_retained == 1);
  REQUIRE(result.excluded.size() == 1);
  CHECK(result.excluded[0].reason == "cadence_violation");
}

TEST_CASE("filter_complete_days requires a step dividing the day") {
  CHECK_THROWS_AS(filter_complete_days({}, 7000), Error);
  CHECK_THROWS_AS(filter_complete_days({}, 0), Error);
}

TEST_CASE("filter output length is always a multiple of the day size") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::string text = "timestamp,wind_speed_mps\n";
    for (int d = 0; d < 4; ++d) {
      const bool break_day = (rng() % 2) == 0;
      const int skip = break_day ? static_cast<int>(rng() % 144) : -1;
      text += day_rows(kDay0 + d * kSecondsPerDay, 4.0 + d, skip);
    }
    try {
      const auto result = filter_complete_days(parse_text(text), 600);
      CHECK(result.series.size() % 144 == 0);
      CHECK(result.series.size() == result.days_retained * 144);
    } catch (const Error& e) {
      CHECK(e.code() == errc::no_complete_days);
    }
  }
}

TEST_CASE("removing one record removes exactly that day") {
  const std::string complete = "timestamp,wind_speed_mps\n" + day_rows(kDay0, 5.0) +
                               day_rows(kDay0 + kSecondsPerDay, 6.0) +
                               day_rows(kDay0 + 2 * kSecondsPerDay, 7.0);
  const std::string damaged = "timestamp,wind_speed_mps\n" + day_rows(kDay0, 5.0) +
                              day_rows(kDay0 + kSecondsPerDay, 6.0, 71) +
                              day_rows(kDay0 + 2 * kSecondsPerDay, 7.0);
  const auto full = filter_complete_days(parse_text(complete), 600);
  const auto partial = filter_complete_days(parse_text(damaged), 600);
  REQUIRE(full.series.size() == 432);
  REQUIRE(partial.series.size() == 288);
  for (std::size_t i = 0; i < 144; ++i) {
    CHECK(partial.series.values[i] == full.series.values[i]);
    CHECK(partial.series.values[144 + i] == full.series.values[288 + i]);
  }
}

TEST_CASE("load_power_curve") {
  synthetic::TempDir dir("ingest_curve");
  const auto write = [&](const std::string& name, const std::string& text) {
    const auto path = dir.path() / name;
    std::ofstream out(path);
    out << text;
    return path;
  };

  SUBCASE("well-formed three-point curve") {
    const auto curve =
        load_power_curve(write("ok.csv", "wind_speed_mps,power_kw\n0,0\n10,1000\n25,1000\n"));
    REQUIRE(curve.speeds.size() == 3);
    CHECK(curve.cut_in() == 10.0);
    CHECK(curve.cut_out() == 25.0);
  }
  SUBCASE("non-monotonic speeds") {
    CHECK_THROWS_WITH_AS(
        load_power_curve(write("bad1.csv", "wind_speed_mps,power_kw\n10,1000\n5,0\n")),
        doctest::Contains("NonMonotonicSpeeds"), Error);
  }
  SUBCASE("negative power or too few points") {
    try {
      load_power_curve(write("bad2.csv", "wind_speed_mps,power_kw\n0,-1\n"));
      FAIL("expected an error");
    } catch (const Error& e) {
      const bool expected =
          e.code() == errc::negative_power || e.code() == errc::fewer_than_two_points;
      CHECK(expected);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(load_power_curve(dir.path() / "absent.csv"), doctest::Contains("IoError"),
                         Error);
  }
  SUBCASE("wrong header") {
    CHECK_THROWS_AS(load_power_curve(write("bad3.csv", "speed,power\n0,0\n10,10\n")), Error);
  }
}
