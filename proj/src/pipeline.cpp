#include "windres/pipeline.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "csv_util.hpp"
#include "windres/dist_stats.hpp"
#include "windres/param_fit.hpp"
#include "windres/power_model.hpp"
#include "windres/resample.hpp"
#include "windres/time_util.hpp"
#include "windres/version.hpp"

namespace windres {

namespace {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SeriesInfo {
  std::string key;
  std::string label;  // resolution label or "base"
  std::string mode;   // "avg", "inst" or "raw"
  std::size_t t = 1;  // block length relative to the base step
};

std::string csv_bool(bool v) { return v ? "true" : "false"; }

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) { out_ << header << "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out_ << ",";
      if (fields[i].find_first_of(",\"\n") != std::string::npos) {
        out_ << '"';
        for (const char c : fields[i]) {
          if (c == '"') out_ << '"';
          out_ << c;
        }
        out_ << '"';
      } else {
        out_ << fields[i];
      }
    }
    out_ << "\n";
  }

  void save(const std::filesystem::path& path) { write_text_file(path, out_.str()); }

 private:
  std::ostringstream out_;
};

std::vector<double> even_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

}  // namespace

ordered_json weibull_to_json(const WeibullParams& params) {
  ordered_json j;
  j["beta"] = params.beta;
  j["lambda"] = params.lambda;
  j["theta"] = params.theta;
  j["log_likelihood"] = params.log_likelihood;
  j["n_samples"] = params.n_samples;
  return j;
}

ordered_json gengamma_to_json(const GenGammaParams& params) {
  ordered_json j;
  j["a"] = params.a;
  j["d"] = params.d;
  j["p"] = params.p;
  j["log_likelihood"] = params.log_likelihood;
  j["n_samples"] = params.n_samples;
  return j;
}

ordered_json ks_to_json(const KsResult& result) {
  ordered_json j;
  j["d_stat"] = result.d_stat;
  j["p_value"] = result.p_value;
  j["n1"] = result.n1;
  j["n2"] = result.n2;
  j["significant"] = result.significant;
  return j;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag) {
  return splitmix64(seed ^ fnv1a64(tag));
}

void run_analyze(const AnalyzeOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) fail(errc::io_error, "cannot create output directory '" + options.out_dir.string() + "'");

  ordered_json manifest;
  manifest["tool"] = "windres";
  manifest["version"] = std::string(kVersion);
  manifest["command"] = "analyze";
  manifest["input"] = options.input.string();
  manifest["base_step_seconds"] = options.base_step;
  manifest["resolutions"] = options.resolutions;
  manifest["modes"] = options.modes;
  manifest["reference"] = options.reference;
  manifest["seed"] = options.seed;
  manifest["power_curve"] =
      options.power_curve ? ordered_json(options.power_curve->string()) : ordered_json(nullptr);
  {
    ordered_json formats = ordered_json::array();
    if (options.write_json) formats.push_back("json");
    if (options.write_csv) formats.push_back("csv");
    manifest["format"] = formats;
  }
  std::vector<std::string> warnings;

  // ingest
  const auto records = parse_csv(options.input, options.csv);
  const auto filtered = filter_complete_days(records, options.base_step);
  const WindSeries& base = filtered.series;

  {
    ordered_json ingest;
    ingest["records"] = records.size();
    ingest["days_retained"] = filtered.days_retained;
    ingest["values_retained"] = base.size();
    ordered_json excluded = ordered_json::array();
    for (const auto& day : filtered.excluded) {
      ordered_json e;
      e["date"] = day.date;
      e["reason"] = day.reason;
      excluded.push_back(e);
    }
    ingest["excluded_days"] = excluded;
    manifest["ingest"] = ingest;
  }

  // resample ladder
  std::vector<ResampleSpec> specs;
  std::vector<SeriesInfo> info;
  info.push_back({"base", "base", "raw", 1});
  for (const auto& mode_name : options.modes) {
    const auto mode = ResampleSpec::mode_from_name(mode_name);
    if (!mode) fail(errc::config_error, "unknown mode '" + mode_name + "' (use avg or inst)");
    for (const auto& label : options.resolutions) {
      const auto spec = ResampleSpec::from_label(label, *mode, options.base_step);
      const std::string key = spec.key();
      if (std::any_of(info.begin(), info.end(),
                      [&](const SeriesInfo& i) { return i.key == key; })) {
        fail(errc::config_error, "duplicate resolution/mode entry '" + key + "'");
      }
      specs.push_back(spec);
      info.push_back({key, spec.label, ResampleSpec::mode_name(spec.mode), spec.t});
    }
  }
  const LadderResult ladder = resolution_ladder(base, specs);
  for (const auto& [key, message] : ladder.failed) {
    warnings.push_back("resample " + key + ": " + message);
  }
  info.erase(std::remove_if(info.begin(), info.end(),
                            [&](const SeriesInfo& i) {
                              return i.key != "base" && ladder.produced.count(i.key) == 0;
                            }),
             info.end());

  std::map<std::string, WindSeries> all_series(ladder.produced);
  // note: the base series is large; keep one copy only
  const auto series_of = [&](const std::string& key) -> const WindSeries& {
    return key == "base" ? base : all_series.at(key);
  };
  const auto info_of = [&](const std::string& key) -> const SeriesInfo& {
    const auto it = std::find_if(info.begin(), info.end(),
                                 [&](const SeriesInfo& i) { return i.key == key; });
    return *it;
  };

  if (options.reference != "base" && ladder.produced.count(options.reference) == 0) {
    fail(errc::config_error,
         "reference label '" + options.reference + "' is not among the produced series");
  }

  std::vector<std::string> all_keys;
  for (const auto& i : info) all_keys.push_back(i.key);
  std::sort(all_keys.begin(), all_keys.end());

  {
    ordered_json inventory = ordered_json::array();
    for (const auto& key : all_keys) {
      const WindSeries& s = series_of(key);
      ordered_json e;
      e["key"] = key;
      e["n"] = s.size();
      e["step_seconds"] = s.step;
      e["provenance"] = provenance_name(s.provenance);
      inventory.push_back(e);
    }
    manifest["series"] = inventory;
  }

  // variance table (Fig.-4-style data)
  {
    ordered_json rows = ordered_json::array();
    CsvWriter csv("key,label,mode,step_seconds,n,mean,variance_population,variance_sample,min,max");
    for (const auto& key : all_keys) {
      const WindSeries& s = series_of(key);
      const SeriesInfo& i = info_of(key);
      const SummaryStats stats = summary(s);
      ordered_json row;
      row["key"] = key;
      row["label"] = i.label;
      row["mode"] = i.mode;
      row["step_seconds"] = s.step;
      row["n"] = stats.n;
      row["mean"] = stats.mean;
      row["variance_population"] = stats.variance_population;
      row["variance_sample"] = stats.variance_sample;
      row["min"] = stats.min;
      row["max"] = stats.max;
      rows.push_back(row);
      csv.row({key, i.label, i.mode, std::to_string(s.step), std::to_string(stats.n),
               format_double(stats.mean), format_double(stats.variance_population),
               format_double(stats.variance_sample), format_double(stats.min),
               format_double(stats.max)});
    }
    ordered_json j;
    j["series"] = rows;
    if (options.write_json) write_text_file(options.out_dir / "variance_table.json", dump_deterministic(j));
    if (options.write_csv) csv.save(options.out_dir / "variance_table.csv");
  }

  // KS matrix per mode, coarse resolutions first, base last (table layout)
  {
    std::map<std::string, EmpiricalCdf> cdfs;
    for (const auto& key : all_keys) cdfs.emplace(key, ecdf(series_of(key)));

    ordered_json tables = ordered_json::array();
    CsvWriter csv("mode,a,b,d_stat,p_value,n1,n2,significant");
    for (const auto& mode_name : options.modes) {
      std::vector<SeriesInfo> members;
      for (const auto& i : info) {
        if (i.mode == mode_name) members.push_back(i);
      }
      std::sort(members.begin(), members.end(),
                [](const SeriesInfo& a, const SeriesInfo& b) { return a.t > b.t; });
      members.push_back(info_of("base"));

      ordered_json table;
      table["mode"] = mode_name;
      ordered_json keys = ordered_json::array();
      for (const auto& m : members) keys.push_back(m.key);
      table["keys"] = keys;
      ordered_json cells = ordered_json::array();
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const KsResult r = ks_two_sample(cdfs.at(members[i].key), cdfs.at(members[j].key));
          const ordered_json stats = ks_to_json(r);
          ordered_json cell;
          cell["a"] = members[i].key;
          cell["b"] = members[j].key;
          for (const auto& [field, value] : stats.items()) cell[field] = value;
          cells.push_back(cell);
          csv.row({mode_name, members[i].key, members[j].key, format_double(r.d_stat),
                   format_double(r.p_value), std::to_string(r.n1), std::to_string(r.n2),
                   csv_bool(r.significant)});
        }
      }
      table["cells"] = cells;
      tables.push_back(table);
    }
    ordered_json j;
    j["alpha"] = kKsAlpha;
    j["tables"] = tables;
    if (options.write_json) write_text_file(options.out_dir / "ks_matrix.json", dump_deterministic(j));
    if (options.write_csv) csv.save(options.out_dir / "ks_matrix.csv");

    // CDF difference curves against the reference (Fig.-3-style data)
    const EmpiricalCdf& ref_cdf = cdfs.at(options.reference);
    for (const auto& key : all_keys) {
      if (key == options.reference) continue;
      const EmpiricalCdf& other = cdfs.at(key);
      const double lo = std::min(ref_cdf.sorted_values.front(), other.sorted_values.front());
      const double hi = std::max(ref_cdf.sorted_values.back(), other.sorted_values.back());
      const auto grid = even_grid(lo, hi, 512);
      const auto curve = cdf_difference_curve(ref_cdf, other, grid);
      CsvWriter diff_csv("speed_mps,delta_cdf");
      for (const auto& [w, delta] : curve) diff_csv.row({format_double(w), format_double(delta)});
      diff_csv.save(options.out_dir / ("cdf_diff_" + key + ".csv"));
    }
  }

  // KDE with Scott bandwidth per series
  for (const auto& key : all_keys) {
    const WindSeries& s = series_of(key);
    try {
      const double h = scott_bandwidth(s);
      const auto grid = default_kde_grid(s, h);
      const auto density = kde_density(s, KdeSpec{h}, grid);
      CsvWriter csv("speed_mps,density,below_zero");
      for (const auto& [w, f] : density) {
        csv.row({format_double(w), format_double(f), w < 0.0 ? "1" : "0"});
      }
      csv.save(options.out_dir / ("kde_" + key + ".csv"));
    } catch (const Error& e) {
      warnings.push_back("kde " + key + ": " + e.what());
    }
  }

  // distribution fits + QQ data
  {
    ordered_json rows = ordered_json::array();
    CsvWriter csv(
        "key,step_seconds,n,weibull_beta,weibull_lambda,weibull_theta,weibull_log_likelihood,"
        "weibull_error,gengamma_a,gengamma_d,gengamma_p,gengamma_log_likelihood,gengamma_error");
    FitOptions fit_options;
    fit_options.force = options.force_fit;
    for (const auto& key : all_keys) {
      const WindSeries& s = series_of(key);
      ordered_json row;
      row["key"] = key;
      row["step_seconds"] = s.step;
      row["n"] = s.size();
      std::vector<std::string> csv_row = {key, std::to_string(s.step), std::to_string(s.size())};

      std::optional<WeibullParams> weibull;
      try {
        weibull = fit_weibull_mle(s, fit_options);
        row["weibull"] = weibull_to_json(*weibull);
        csv_row.insert(csv_row.end(),
                       {format_double(weibull->beta), format_double(weibull->lambda),
                        format_double(weibull->theta), format_double(weibull->log_likelihood), ""});
      } catch (const Error& e) {
        row["weibull"] = ordered_json{{"error", e.what()}};
        csv_row.insert(csv_row.end(), {"", "", "", "", std::string(e.what())});
      }

      std::optional<GenGammaParams> gengamma;
      try {
        gengamma = fit_gengamma_mle(s, fit_options);
        row["gengamma"] = gengamma_to_json(*gengamma);
        csv_row.insert(csv_row.end(),
                       {format_double(gengamma->a), format_double(gengamma->d),
                        format_double(gengamma->p), format_double(gengamma->log_likelihood), ""});
      } catch (const Error& e) {
        row["gengamma"] = ordered_json{{"error", e.what()}};
        csv_row.insert(csv_row.end(), {"", "", "", "", std::string(e.what())});
      }
      rows.push_back(row);
      csv.row(csv_row);

      if (weibull) {
        const auto pairs = qq_data(s, *weibull, derive_seed(options.seed, key + "/weibull"));
        CsvWriter qq_csv("sample_quantile_mps,model_quantile_mps");
        for (const auto& [observed, model] : pairs) {
          qq_csv.row({format_double(observed), format_double(model)});
        }
        qq_csv.save(options.out_dir / ("qq_weibull_" + key + ".csv"));
      }
      if (gengamma) {
        const auto pairs = qq_data(s, *gengamma, derive_seed(options.seed, key + "/gengamma"));
        CsvWriter qq_csv("sample_quantile_mps,model_quantile_mps");
        for (const auto& [observed, model] : pairs) {
          qq_csv.row({format_double(observed), format_double(model)});
        }
        qq_csv.save(options.out_dir / ("qq_gengamma_" + key + ".csv"));
      }
    }
    ordered_json j;
    j["series"] = rows;
    if (options.write_json) write_text_file(options.out_dir / "fits.json", dump_deterministic(j));
    if (options.write_csv) csv.save(options.out_dir / "fits.csv");
  }

  // generation report (Figs. 6-7-style data), only with a power curve
  if (options.power_curve) {
    const PowerCurve curve = load_power_curve(*options.power_curve);
    std::map<std::string, WindSeries> candidates;
    for (const auto& key : all_keys) {
      if (key != options.reference) candidates.emplace(key, series_of(key));
    }
    const GenerationReport report =
        generation_error(options.reference, series_of(options.reference), candidates, curve);

    ordered_json entries = ordered_json::array();
    CsvWriter csv(
        "key,step_seconds,total_energy_kwh,total_energy_mwh,absolute_error_kwh,"
        "absolute_error_mwh,relative_error_pct");
    for (const auto& entry : report.entries) {
      ordered_json e;
      e["key"] = entry.key;
      e["step_seconds"] = entry.step;
      e["total_energy_kwh"] = entry.total_energy_kwh;
      e["total_energy_mwh"] = entry.total_energy_kwh / 1000.0;
      e["absolute_error_kwh"] = entry.absolute_error_kwh;
      e["absolute_error_mwh"] = entry.absolute_error_kwh / 1000.0;
      e["relative_error_pct"] = entry.relative_error_pct;
      entries.push_back(e);
      csv.row({entry.key, std::to_string(entry.step), format_double(entry.total_energy_kwh),
               format_double(entry.total_energy_kwh / 1000.0),
               format_double(entry.absolute_error_kwh),
               format_double(entry.absolute_error_kwh / 1000.0),
               format_double(entry.relative_error_pct)});

      CsvWriter cumulative("timestamp,cumulative_kwh,fraction_of_reference");
      for (std::size_t i = 0; i < entry.cumulative_kwh.size(); ++i) {
        const std::int64_t ts = entry.start_time + static_cast<std::int64_t>(i + 1) * entry.step;
        cumulative.row({format_iso8601(ts), format_double(entry.cumulative_kwh[i]),
                        format_double(entry.cumulative_kwh[i] / report.reference_energy_kwh)});
      }
      cumulative.save(options.out_dir / ("cumulative_" + entry.key + ".csv"));
    }
    ordered_json j;
    j["reference"] = report.reference_key;
    j["reference_energy_kwh"] = report.reference_energy_kwh;
    j["entries"] = entries;
    if (options.write_json) {
      write_text_file(options.out_dir / "generation_report.json", dump_deterministic(j));
    }
    if (options.write_csv) csv.save(options.out_dir / "generation_report.csv");
  }

  manifest["resample_failures"] = [&] {
    ordered_json j = ordered_json::object();
    for (const auto& [key, message] : ladder.failed) j[key] = message;
    return j;
  }();
  manifest["warnings"] = warnings;
  write_text_file(options.out_dir / "run_manifest.json", dump_deterministic(manifest));
}

}  // namespace windres
