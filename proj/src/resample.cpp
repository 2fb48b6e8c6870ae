#include "windres/resample.hpp"

#include "windres/kernels.hpp"

namespace windres {

namespace {

WindSeries derived_shell(const WindSeries& series, std::size_t t, Provenance provenance) {
  WindSeries out;
  out.start_time = series.start_time;
  out.step = series.step * static_cast<std::int64_t>(t);
  out.source_step = series.step;
  out.provenance = provenance;
  return out;
}

}  // namespace

WindSeries block_average(const WindSeries& series, std::size_t t) {
  validate_series(series);
  if (t < 1) fail(errc::invalid_spec, "block length must be >= 1");
  if (t > series.size()) {
    fail(errc::block_longer_than_series,
         "block length " + std::to_string(t) + " exceeds series length " +
             std::to_string(series.size()));
  }
  WindSeries out = derived_shell(series, t, Provenance::averaged);
  out.values.resize(series.size() / t);
  kernels::block_average(series.values, t, out.values);
  return out;
}

WindSeries subsample_instantaneous(const WindSeries& series, std::size_t t) {
  validate_series(series);
  if (t < 1) fail(errc::invalid_spec, "block length must be >= 1");
  WindSeries out = derived_shell(series, t, Provenance::instantaneous);
  out.values.reserve((series.size() + t - 1) / t);
  for (std::size_t i = 0; i < series.size(); i += t) out.values.push_back(series.values[i]);
  return out;
}

WindSeries resample(const WindSeries& series, const ResampleSpec& spec) {
  return spec.mode == ResampleSpec::Mode::average ? block_average(series, spec.t)
                                                  : subsample_instantaneous(series, spec.t);
}

LadderResult resolution_ladder(const WindSeries& series, std::span<const ResampleSpec> specs) {
  LadderResult result;
  for (const auto& spec : specs) {
    const std::string key = spec.key();
    try {
      result.produced.emplace(key, resample(series, spec));
    } catch (const Error& e) {
      result.failed.emplace(key, e.what());
    }
  }
  return result;
}

}  // namespace windres
