#include "windres/types.hpp"

#include <cmath>

#include "windres/time_util.hpp"

namespace windres {

const char* provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::raw: return "raw";
    case Provenance::averaged: return "averaged";
    case Provenance::instantaneous: return "instantaneous";
  }
  return "raw";
}

std::optional<Provenance> provenance_from_name(std::string_view name) noexcept {
  if (name == "raw") return Provenance::raw;
  if (name == "averaged") return Provenance::averaged;
  if (name == "instantaneous") return Provenance::instantaneous;
  return std::nullopt;
}

const WindSeries& validate_series(const WindSeries& series) {
  if (series.values.empty()) fail(errc::empty_series, "series has no values");
  if (series.step <= 0) fail(errc::invalid_step, "step must be positive");
  if (series.provenance != Provenance::raw) {
    if (series.source_step <= 0 || series.step % series.source_step != 0 ||
        series.step < series.source_step) {
      fail(errc::invalid_step, "derived series step must be an integer multiple of source_step");
    }
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const double v = series.values[i];
    if (!std::isfinite(v)) {
      fail_at(errc::non_finite, "non-finite value at index " + std::to_string(i), i);
    }
    if (v < 0.0) {
      fail_at(errc::negative_speed, "negative speed at index " + std::to_string(i), i);
    }
  }
  return series;
}

ResampleSpec ResampleSpec::from_label(std::string_view label, Mode mode, std::int64_t base_step) {
  if (base_step <= 0) fail(errc::invalid_spec, "base step must be positive");
  const auto duration = parse_duration(label);
  if (!duration) {
    fail(errc::invalid_spec, "cannot parse resolution label '" + std::string(label) + "'");
  }
  if (*duration % base_step != 0) {
    fail(errc::invalid_spec, "resolution '" + std::string(label) + "' (" +
                                 std::to_string(*duration) + " s) is not a multiple of the base step (" +
                                 std::to_string(base_step) + " s)");
  }
  ResampleSpec spec;
  spec.mode = mode;
  spec.t = static_cast<std::size_t>(*duration / base_step);
  spec.label = std::string(label);
  return spec;
}

std::optional<ResampleSpec::Mode> ResampleSpec::mode_from_name(std::string_view name) noexcept {
  if (name == "avg" || name == "average") return Mode::average;
  if (name == "inst" || name == "instantaneous") return Mode::instantaneous;
  return std::nullopt;
}

const char* ResampleSpec::mode_name(Mode mode) noexcept {
  return mode == Mode::average ? "avg" : "inst";
}

std::string ResampleSpec::key() const { return label + "_" + mode_name(mode); }

}  // namespace windres
