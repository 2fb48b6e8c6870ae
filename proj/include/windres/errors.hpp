#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace windres {

/// Failure categories raised by the library. The CLI maps io_error to
/// exit code 2 and everything else to exit code 1.
enum class errc {
  // series validation
  non_finite,
  negative_speed,
  empty_series,
  too_few_samples,
  zero_variance,
  // ingest
  io_error,
  parse_error,
  non_monotonic_timestamp,
  no_complete_days,
  invalid_step,
  // power curve
  non_monotonic_speeds,
  negative_power,
  fewer_than_two_points,
  zero_reference_energy,
  // resampling
  block_longer_than_series,
  invalid_spec,
  // statistics and fitting
  empty_grid,
  sample_outside_support,
  invalid_params,
  non_convergence,
  not_weibull_like,
  // front end
  config_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message);
  /// `location` is the offending value index or 1-based file line.
  Error(errc code, const std::string& message, std::size_t location);

  errc code() const noexcept { return code_; }
  std::optional<std::size_t> location() const noexcept { return location_; }

 private:
  errc code_;
  std::optional<std::size_t> location_;
};

[[noreturn]] void fail(errc code, const std::string& message);
[[noreturn]] void fail_at(errc code, const std::string& message, std::size_t location);

}  // namespace windres
