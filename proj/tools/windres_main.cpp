#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "windres/dist_stats.hpp"
#include "windres/ingest.hpp"
#include "windres/json_out.hpp"
#include "windres/param_fit.hpp"
#include "windres/pipeline.hpp"
#include "windres/power_model.hpp"
#include "windres/resample.hpp"
#include "windres/series_io.hpp"
#include "windres/time_util.hpp"
#include "windres/version.hpp"

namespace {

using windres::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int exit_code_for(const windres::Error& e) {
  return e.code() == windres::errc::io_error ? kExitIo : kExitValidation;
}

std::int64_t parse_step(const std::string& text, const std::string& flag) {
  const auto step = windres::parse_duration(text);
  if (!step) {
    throw windres::Error(windres::errc::config_error,
                         "cannot parse " + flag + " duration '" + text + "'");
  }
  return *step;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (const char c : text) {
    if (c == ',') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

void emit(const ordered_json& j, const std::optional<std::string>& out_path) {
  const std::string text = windres::dump_deterministic(j);
  if (out_path) {
    windres::write_text_file(*out_path, text);
  } else {
    std::cout << text;
  }
}

struct CommonCsvFlags {
  std::string timestamp_column = "timestamp";
  std::string speed_column = "wind_speed_mps";
  std::string missing = ",NaN,-999";

  windres::CsvConfig config() const {
    windres::CsvConfig csv;
    csv.timestamp_column = timestamp_column;
    csv.speed_column = speed_column;
    csv.missing_sentinels.clear();
    // split keeping empty fields: a leading comma marks the blank cell
    std::string current;
    for (const char c : missing) {
      if (c == ',') {
        csv.missing_sentinels.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    csv.missing_sentinels.push_back(current);
    return csv;
  }
};

void add_csv_flags(CLI::App* cmd, CommonCsvFlags& flags) {
  cmd->add_option("--timestamp-column", flags.timestamp_column, "Timestamp column name");
  cmd->add_option("--speed-column", flags.speed_column, "Wind speed column name");
  cmd->add_option("--missing", flags.missing,
                  "Comma-separated missing-value sentinels (empty field = blank cell)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind speed temporal-resolution analysis"};
  app.set_version_flag("--version", std::string(windres::kVersion));
  app.require_subcommand(1);

  std::string stage = "cli";
  try {
    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline over an observation CSV");
    windres::AnalyzeOptions analyze_options;
    std::string analyze_input, analyze_out, analyze_base_step = "10min";
    std::string analyze_resolutions = "3h,6h,1d", analyze_modes = "avg,inst";
    std::string analyze_format = "json,csv";
    std::string analyze_power_curve, analyze_reference = "base";
    CommonCsvFlags analyze_csv;
    analyze->add_option("--input", analyze_input, "Observation CSV")->required();
    analyze->add_option("--out", analyze_out, "Output directory")->required();
    analyze->add_option("--base-step", analyze_base_step, "Base step (default 10min)");
    analyze->add_option("--resolutions", analyze_resolutions, "Comma list (default 3h,6h,1d)");
    analyze->add_option("--modes", analyze_modes, "Comma list of avg,inst");
    analyze->add_option("--power-curve", analyze_power_curve, "Power curve CSV (optional)");
    analyze->add_option("--reference", analyze_reference, "Reference series key (default base)");
    analyze->add_option("--seed", analyze_options.seed, "Random seed (default 42)");
    analyze->add_option("--format", analyze_format, "json, csv or json,csv");
    analyze->add_flag("--force-fit", analyze_options.force_fit,
                      "Fit distributions even to monthly-resolution series");
    add_csv_flags(analyze, analyze_csv);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Apply the complete-day filter to raw observations");
    std::string ingest_input, ingest_out, ingest_step = "10min";
    std::string ingest_summary;
    CommonCsvFlags ingest_csv;
    ingest->add_option("--input", ingest_input, "Observation CSV")->required();
    ingest->add_option("--out", ingest_out, "Series CSV to write")->required();
    ingest->add_option("--expected-step", ingest_step, "Observation cadence (default 10min)");
    ingest->add_option("--summary", ingest_summary, "Write the exclusion summary JSON here");
    add_csv_flags(ingest, ingest_csv);

    // resample
    auto* resample_cmd = app.add_subcommand("resample", "Derive a lower-resolution series");
    std::string resample_input, resample_out, resample_label, resample_mode = "avg";
    std::size_t resample_t = 0;
    resample_cmd->add_option("--input", resample_input, "Series CSV")->required();
    resample_cmd->add_option("--out", resample_out, "Series CSV to write")->required();
    resample_cmd->add_option("--label", resample_label, "Resolution label, e.g. 3h");
    resample_cmd->add_option("--t", resample_t, "Block length in steps (alternative to --label)");
    resample_cmd->add_option("--mode", resample_mode, "avg or inst");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit Weibull / generalized Gamma parameters");
    std::string fit_input, fit_dist = "both";
    std::optional<std::string> fit_out;
    bool fit_force = false;
    fit->add_option("--input", fit_input, "Series CSV")->required();
    fit->add_option("--dist", fit_dist, "weibull, gengamma or both");
    fit->add_option("--out", fit_out, "Output JSON path (default stdout)");
    fit->add_flag("--force", fit_force, "Fit even monthly-resolution series");

    // ks
    auto* ks = app.add_subcommand("ks", "Two-sample Kolmogorov-Smirnov test");
    std::string ks_a, ks_b;
    std::optional<std::string> ks_out;
    ks->add_option("--a", ks_a, "First series CSV")->required();
    ks->add_option("--b", ks_b, "Second series CSV")->required();
    ks->add_option("--out", ks_out, "Output JSON path (default stdout)");

    // power
    auto* power = app.add_subcommand("power", "Energy total through a power curve");
    std::string power_input, power_curve;
    std::optional<std::string> power_out, power_cumulative;
    power->add_option("--input", power_input, "Series CSV")->required();
    power->add_option("--power-curve", power_curve, "Power curve CSV")->required();
    power->add_option("--out", power_out, "Output JSON path (default stdout)");
    power->add_option("--cumulative", power_cumulative, "Write the cumulative series CSV here");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);  // prints the message / help text
      return code == 0 ? kExitOk : kExitValidation;
    }

    if (*analyze) {
      stage = "analyze";
      analyze_options.input = analyze_input;
      analyze_options.out_dir = analyze_out;
      analyze_options.base_step = parse_step(analyze_base_step, "--base-step");
      analyze_options.resolutions = split_list(analyze_resolutions);
      analyze_options.modes = split_list(analyze_modes);
      if (!analyze_power_curve.empty()) analyze_options.power_curve = analyze_power_curve;
      analyze_options.reference = analyze_reference;
      analyze_options.csv = analyze_csv.config();
      analyze_options.write_json = false;
      analyze_options.write_csv = false;
      for (const auto& f : split_list(analyze_format)) {
        if (f == "json") analyze_options.write_json = true;
        else if (f == "csv") analyze_options.write_csv = true;
        else throw windres::Error(windres::errc::config_error, "unknown format '" + f + "'");
      }
      if (!analyze_options.write_json && !analyze_options.write_csv) {
        throw windres::Error(windres::errc::config_error, "--format selected no outputs");
      }
      windres::run_analyze(analyze_options);
      return kExitOk;
    }

    if (*ingest) {
      stage = "ingest";
      const auto records = windres::parse_csv(std::filesystem::path(ingest_input),
                                              ingest_csv.config());
      const auto filtered =
          windres::filter_complete_days(records, parse_step(ingest_step, "--expected-step"));
      windres::write_series_csv(std::filesystem::path(ingest_out), filtered.series);
      ordered_json summary;
      summary["records"] = records.size();
      summary["days_retained"] = filtered.days_retained;
      summary["values_retained"] = filtered.series.size();
      ordered_json excluded = ordered_json::array();
      for (const auto& day : filtered.excluded) {
        excluded.push_back(ordered_json{{"date", day.date}, {"reason", day.reason}});
      }
      summary["excluded_days"] = excluded;
      emit(summary, ingest_summary.empty() ? std::nullopt
                                           : std::optional<std::string>(ingest_summary));
      return kExitOk;
    }

    if (*resample_cmd) {
      stage = "resample";
      const auto mode = windres::ResampleSpec::mode_from_name(resample_mode);
      if (!mode) {
        throw windres::Error(windres::errc::config_error,
                             "unknown mode '" + resample_mode + "' (use avg or inst)");
      }
      const windres::WindSeries series =
          windres::read_series_csv(std::filesystem::path(resample_input));
      windres::ResampleSpec spec;
      if (!resample_label.empty()) {
        spec = windres::ResampleSpec::from_label(resample_label, *mode, series.step);
      } else if (resample_t >= 1) {
        spec.mode = *mode;
        spec.t = resample_t;
        spec.label = std::to_string(resample_t) + "x";
      } else {
        throw windres::Error(windres::errc::config_error, "pass --label or --t");
      }
      windres::write_series_csv(std::filesystem::path(resample_out),
                                windres::resample(series, spec));
      return kExitOk;
    }

    if (*fit) {
      stage = "fit";
      if (fit_dist != "weibull" && fit_dist != "gengamma" && fit_dist != "both") {
        throw windres::Error(windres::errc::config_error,
                             "--dist must be weibull, gengamma or both");
      }
      const windres::WindSeries series = windres::read_series_csv(std::filesystem::path(fit_input));
      windres::FitOptions fit_options;
      fit_options.force = fit_force;
      ordered_json j;
      j["n"] = series.size();
      j["step_seconds"] = series.step;
      if (fit_dist == "weibull" || fit_dist == "both") {
        j["weibull"] = windres::weibull_to_json(windres::fit_weibull_mle(series, fit_options));
      }
      if (fit_dist == "gengamma" || fit_dist == "both") {
        j["gengamma"] = windres::gengamma_to_json(windres::fit_gengamma_mle(series, fit_options));
      }
      emit(j, fit_out);
      return kExitOk;
    }

    if (*ks) {
      stage = "ks";
      const auto series_a = windres::read_series_csv(std::filesystem::path(ks_a));
      const auto series_b = windres::read_series_csv(std::filesystem::path(ks_b));
      const auto result = windres::ks_two_sample(windres::ecdf(series_a), windres::ecdf(series_b));
      emit(windres::ks_to_json(result), ks_out);
      return kExitOk;
    }

    if (*power) {
      stage = "power";
      const auto series = windres::read_series_csv(std::filesystem::path(power_input));
      const auto curve = windres::load_power_curve(std::filesystem::path(power_curve));
      const auto energy = windres::energy_total(series, curve);
      ordered_json j;
      j["n_steps"] = series.size();
      j["step_seconds"] = series.step;
      j["total_energy_kwh"] = energy.total_kwh;
      emit(j, power_out);
      if (power_cumulative) {
        std::string text = "timestamp,cumulative_kwh\n";
        for (std::size_t i = 0; i < energy.cumulative_kwh.size(); ++i) {
          const std::int64_t ts =
              series.start_time + static_cast<std::int64_t>(i + 1) * series.step;
          text += windres::format_iso8601(ts) + "," +
                  windres::format_double(energy.cumulative_kwh[i]) + "\n";
        }
        windres::write_text_file(*power_cumulative, text);
      }
      return kExitOk;
    }
  } catch (const windres::Error& e) {
    std::cerr << "windres " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "windres " << stage << ": " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
