#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "oracles.hpp"
#include "run_cli.hpp"
#include "synthetic.hpp"
#include "windres/series_io.hpp"

using namespace windres;
namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kDay0 = 1451606400;

fs::path write_synthetic_observations(const fs::path& dir, std::size_t days,
                                      const std::set<std::size_t>& missing = {}) {
  const auto series =
      synthetic::ar1_weibull_wind(days * 144, 0.98, 2.0, 8.0, 0.5, 321, 600, kDay0);
  const auto path = dir / "obs.csv";
  synthetic::write_observation_csv(path, kDay0, 600, series.values, missing);
  return path;
}

}  // namespace

TEST_CASE("analyze happy path writes the artifact set") {
  synthetic::TempDir dir("cli_analyze");
  const auto input = write_synthetic_observations(dir.path(), 10);
  const auto curve_path = dir.path() / "curve.csv";
  {
    std::ofstream out(curve_path);
    out << "wind_speed_mps,power_kw\n0,0\n3,20\n10,1100\n14,2350\n25,2350\n";
  }
  const auto out_dir = dir.path() / "run";
  const auto result = clitest::run_cli({"analyze", "--input", input.string(), "--out",
                                        out_dir.string(), "--power-curve", curve_path.string()},
                                       dir.path());
  CAPTURE(result.err);
  REQUIRE(result.exit_code == 0);

  for (const char* name :
       {"ks_matrix.json", "ks_matrix.csv", "fits.json", "fits.csv", "variance_table.json",
        "variance_table.csv", "generation_report.json", "generation_report.csv",
        "run_manifest.json", "cdf_diff_3h_avg.csv", "cdf_diff_1d_inst.csv", "kde_base.csv",
        "qq_weibull_base.csv", "cumulative_base.csv", "cumulative_6h_avg.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(out_dir / name));
  }

  const auto manifest = nlohmann::json::parse(clitest::read_file(out_dir / "run_manifest.json"));
  CHECK(manifest["ingest"]["days_retained"] == 10);
  CHECK(manifest["seed"] == 42);
  CHECK(manifest["series"].size() == 7);  // base + 3 resolutions x 2 modes

  const auto ks = nlohmann::json::parse(clitest::read_file(out_dir / "ks_matrix.json"));
  CHECK(ks["alpha"] == 0.05);
  REQUIRE(ks["tables"].size() == 2);
  // significance markers match the recorded p-values
  for (const auto& table : ks["tables"]) {
    for (const auto& cell : table["cells"]) {
      CHECK(cell["significant"].get<bool>() == (cell["p_value"].get<double>() <= 0.05));
    }
  }
}

TEST_CASE("analyze records excluded days in the manifest") {
  synthetic::TempDir dir("cli_excl");
  const auto input = write_synthetic_observations(dir.path(), 4, /*missing=*/{150});
  const auto out_dir = dir.path() / "run";
  const auto result = clitest::run_cli(
      {"analyze", "--input", input.string(), "--out", out_dir.string()}, dir.path());
  REQUIRE(result.exit_code == 0);
  const auto manifest = nlohmann::json::parse(clitest::read_file(out_dir / "run_manifest.json"));
  CHECK(manifest["ingest"]["days_retained"] == 3);
  REQUIRE(manifest["ingest"]["excluded_days"].size() == 1);
  CHECK(manifest["ingest"]["excluded_days"][0]["date"] == "2016-01-02");
  CHECK(manifest["ingest"]["excluded_days"][0]["reason"] == "missing_observations");
}

TEST_CASE("analyze exit codes") {
  synthetic::TempDir dir("cli_exit");
  SUBCASE("missing input file -> exit 2 with the path in the message") {
    const auto result = clitest::run_cli({"analyze", "--input", (dir.path() / "absent.csv").string(),
                                          "--out", (dir.path() / "out").string()},
                                         dir.path());
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("absent.csv") != std::string::npos);
    CHECK(result.err.find("analyze") != std::string::npos);
  }
  SUBCASE("unknown reference label -> exit 1") {
    const auto input = write_synthetic_observations(dir.path(), 2);
    const auto result =
        clitest::run_cli({"analyze", "--input", input.string(), "--out",
                          (dir.path() / "out").string(), "--reference", "9h_avg"},
                         dir.path());
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("9h_avg") != std::string::npos);
  }
}

TEST_CASE("single-stage pipeline: ingest, resample, ks, power") {
  synthetic::TempDir dir("cli_stages");
  const auto input = write_synthetic_observations(dir.path(), 2);
  const auto series_path = dir.path() / "series.csv";

  auto result = clitest::run_cli(
      {"ingest", "--input", input.string(), "--out", series_path.string()}, dir.path());
  REQUIRE(result.exit_code == 0);
  const auto base = read_series_csv(series_path);
  CHECK(base.size() == 288);

  // resample --t 18 --mode avg over a 36-value series gives 2 values
  WindSeries small;
  small.start_time = kDay0;
  small.step = 600;
  small.source_step = 600;
  for (int i = 0; i < 36; ++i) small.values.push_back(static_cast<double>(i % 7) + 1.0);
  const auto small_path = dir.path() / "small.csv";
  write_series_csv(small_path, small);
  const auto resampled_path = dir.path() / "resampled.csv";
  result = clitest::run_cli({"resample", "--input", small_path.string(), "--out",
                             resampled_path.string(), "--t", "18", "--mode", "avg"},
                            dir.path());
  REQUIRE(result.exit_code == 0);
  const auto resampled = read_series_csv(resampled_path);
  CHECK(resampled.size() == 2);
  CHECK(resampled.step == 10800);
  CHECK(resampled.provenance == Provenance::averaged);

  // ks of a file against itself
  result = clitest::run_cli(
      {"ks", "--a", series_path.string(), "--b", series_path.string()}, dir.path());
  REQUIRE(result.exit_code == 0);
  const auto ks = nlohmann::json::parse(result.out);
  CHECK(ks["d_stat"] == 0.0);
  CHECK(ks["p_value"] == 1.0);
  CHECK(ks["significant"] == false);

  // power with a linear curve
  const auto curve_path = dir.path() / "curve.csv";
  {
    std::ofstream out(curve_path);
    out << "wind_speed_mps,power_kw\n0,0\n100,10000\n";
  }
  result = clitest::run_cli({"power", "--input", small_path.string(), "--power-curve",
                             curve_path.string(), "--cumulative",
                             (dir.path() / "cum.csv").string()},
                            dir.path());
  REQUIRE(result.exit_code == 0);
  const auto power = nlohmann::json::parse(result.out);
  // mean of the 36 values is 3.8888..; energy = sum(100*w) * (1/6) h
  double expected = 0.0;
  for (const double w : small.values) expected += 100.0 * w / 6.0;
  CHECK(power["total_energy_kwh"].get<double>() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fs::exists(dir.path() / "cum.csv"));
}

TEST_CASE("cmd_fit recovers generator parameters through the file interface") {
  synthetic::TempDir dir("cli_fit");
  WindSeries series;
  series.start_time = 0;
  series.step = 600;
  series.source_step = 600;
  series.values = oracle::weibull_draws(2.0, 8.0, 0.5, 100000, 1234);
  const auto series_path = dir.path() / "draws.csv";
  write_series_csv(series_path, series);

  const auto result = clitest::run_cli(
      {"fit", "--input", series_path.string(), "--dist", "weibull"}, dir.path());
  REQUIRE(result.exit_code == 0);
  const auto fit = nlohmann::json::parse(result.out);
  CHECK(fit["weibull"]["beta"].get<double>() == doctest::Approx(2.0).epsilon(0.02));
  CHECK(fit["weibull"]["lambda"].get<double>() == doctest::Approx(8.0).epsilon(0.02));
  CHECK(fit["weibull"]["theta"].get<double>() == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("fit of a constant series exits 1 naming the stage") {
  synthetic::TempDir dir("cli_fit_bad");
  WindSeries series;
  series.start_time = 0;
  series.step = 600;
  series.source_step = 600;
  series.values.assign(100, 5.0);
  const auto series_path = dir.path() / "const.csv";
  write_series_csv(series_path, series);
  const auto result =
      clitest::run_cli({"fit", "--input", series_path.string()}, dir.path());
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("fit") != std::string::npos);
  CHECK(result.err.find("ZeroVariance") != std::string::npos);
}
