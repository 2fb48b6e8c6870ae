#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "windres/types.hpp"

namespace windres {

/// Piecewise-linear turbine power curve. Speeds strictly increasing in
/// m/s, powers in kW. Below the first point and above the last (cut-out)
/// the output is zero.
struct PowerCurve {
  std::vector<double> speeds;
  std::vector<double> powers;

  /// First listed speed with power > 0.
  double cut_in() const noexcept;
  /// Last listed speed; the turbine shuts down above it.
  double cut_out() const noexcept;
};

/// Checks curve invariants; throws NonMonotonicSpeeds, NegativePower or
/// FewerThanTwoPoints.
const PowerCurve& validate_curve(const PowerCurve& curve);

double power_at_speed(const PowerCurve& curve, double speed) noexcept;

struct EnergyResult {
  double total_kwh = 0;
  std::vector<double> cumulative_kwh;  // running total after each step
};

/// Rectangular integration: each sample's power is held for its full step.
EnergyResult energy_total(const WindSeries& series, const PowerCurve& curve);

struct GenerationEntry {
  std::string key;  // series key ("base", "3h_avg", ...)
  std::int64_t start_time = 0;
  std::int64_t step = 0;
  double total_energy_kwh = 0;
  double relative_error_pct = 0;
  double absolute_error_kwh = 0;
  std::vector<double> cumulative_kwh;
};

struct GenerationReport {
  std::string reference_key;
  double reference_energy_kwh = 0;
  std::vector<GenerationEntry> entries;  // reference first, then candidates by key
};

/// Energy totals and errors of each candidate against the reference.
/// Throws ZeroReferenceEnergy when the reference generates nothing.
GenerationReport generation_error(const std::string& reference_key, const WindSeries& reference,
                                  const std::map<std::string, WindSeries>& candidates,
                                  const PowerCurve& curve);

}  // namespace windres
