#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windres/ingest.hpp"
#include "windres/json_out.hpp"
#include "windres/types.hpp"

namespace windres {

struct AnalyzeOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::int64_t base_step = 600;
  std::vector<std::string> resolutions = {"3h", "6h", "1d"};
  std::vector<std::string> modes = {"avg", "inst"};
  std::optional<std::filesystem::path> power_curve;
  std::string reference = "base";  // "base" or a produced series key
  std::uint64_t seed = 42;
  bool write_json = true;
  bool write_csv = true;
  bool force_fit = false;
  CsvConfig csv;
};

/// Runs the whole pipeline over one observation file and writes the
/// artifact set (ks_matrix, fits, variance_table, cdf_diff_*, kde_*,
/// qq_*, generation_report, run_manifest) into out_dir. Artifacts are
/// byte-identical across runs for identical inputs and seed.
void run_analyze(const AnalyzeOptions& options);

ordered_json weibull_to_json(const WeibullParams& params);
ordered_json gengamma_to_json(const GenGammaParams& params);
ordered_json ks_to_json(const KsResult& result);

/// Stable per-artifact sub-seed so QQ draws depend only on --seed and the
/// series identity, not on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag);

}  // namespace windres
