#include "windres/errors.hpp"

namespace windres {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::non_finite: return "NonFinite";
    case errc::negative_speed: return "NegativeSpeed";
    case errc::empty_series: return "EmptySeries";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::zero_variance: return "ZeroVariance";
    case errc::io_error: return "IoError";
    case errc::parse_error: return "ParseError";
    case errc::non_monotonic_timestamp: return "NonMonotonicTimestamp";
    case errc::no_complete_days: return "NoCompleteDays";
    case errc::invalid_step: return "InvalidStep";
    case errc::non_monotonic_speeds: return "NonMonotonicSpeeds";
    case errc::negative_power: return "NegativePower";
    case errc::fewer_than_two_points: return "FewerThanTwoPoints";
    case errc::zero_reference_energy: return "ZeroReferenceEnergy";
    case errc::block_longer_than_series: return "BlockLongerThanSeries";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::empty_grid: return "EmptyGrid";
    case errc::sample_outside_support: return "SampleOutsideSupport";
    case errc::invalid_params: return "InvalidParams";
    case errc::non_convergence: return "NonConvergence";
    case errc::not_weibull_like: return "NotWeibullLike";
    case errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Error::Error(errc code, const std::string& message, std::size_t location)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      location_(location) {}

void fail(errc code, const std::string& message) { throw Error(code, message); }

void fail_at(errc code, const std::string& message, std::size_t location) {
  throw Error(code, message, location);
}

}  // namespace windres
