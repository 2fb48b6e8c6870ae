#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "windres/errors.hpp"

namespace windres {

enum class Provenance { raw, averaged, instantaneous };

const char* provenance_name(Provenance p) noexcept;
std::optional<Provenance> provenance_from_name(std::string_view name) noexcept;

/// Equal-step sequence of wind speeds in m/s. `start_time` and `step` are
/// UTC seconds; `source_step` is the step of the series this one was
/// derived from (equal to `step` for raw series). Values are immutable
/// after construction by convention; all operations take const references
/// and return new series.
struct WindSeries {
  std::int64_t start_time = 0;
  std::int64_t step = 0;
  std::int64_t source_step = 0;
  Provenance provenance = Provenance::raw;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// Checks the WindSeries invariants (finite non-negative values, positive
/// step, integer derivation factor) and returns the series unchanged.
/// Throws Error with code EmptySeries, NonFinite, NegativeSpeed or
/// InvalidStep; index-carrying errors name the first offending value.
const WindSeries& validate_series(const WindSeries& series);

struct ResampleSpec {
  enum class Mode { average, instantaneous };

  Mode mode = Mode::average;
  std::size_t t = 1;   // block length in base steps
  std::string label;   // resolution name, e.g. "3h"

  /// Derives the block length from a duration label and the base step,
  /// e.g. ("3h", 600 s) -> t = 18. Throws InvalidSpec when the label does
  /// not parse or is not an integer multiple of the base step.
  static ResampleSpec from_label(std::string_view label, Mode mode, std::int64_t base_step);

  static std::optional<Mode> mode_from_name(std::string_view name) noexcept;
  static const char* mode_name(Mode mode) noexcept;

  /// Map key used across the pipeline: "<label>_avg" or "<label>_inst".
  std::string key() const;
};

/// Three-parameter Weibull fit: shape beta, scale lambda (m/s), location
/// theta (m/s).
struct WeibullParams {
  double beta = 0;
  double lambda = 0;
  double theta = 0;
  double log_likelihood = 0;
  std::size_t n_samples = 0;
};

/// Generalized Gamma fit: scale a (m/s), shapes d and p.
struct GenGammaParams {
  double a = 0;
  double d = 0;
  double p = 0;
  double log_likelihood = 0;
  std::size_t n_samples = 0;
};

constexpr double kKsAlpha = 0.05;

struct KsResult {
  double d_stat = 0;
  double p_value = 1;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  bool significant = false;  // p_value <= kKsAlpha
};

}  // namespace windres
