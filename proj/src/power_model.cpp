#include "windres/power_model.hpp"

#include <algorithm>
#include <cmath>

#include "windres/kernels.hpp"

namespace windres {

double PowerCurve::cut_in() const noexcept {
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] > 0.0) return speeds[i];
  }
  return speeds.empty() ? 0.0 : speeds.back();
}

double PowerCurve::cut_out() const noexcept { return speeds.empty() ? 0.0 : speeds.back(); }

const PowerCurve& validate_curve(const PowerCurve& curve) {
  if (curve.speeds.size() != curve.powers.size() || curve.speeds.size() < 2) {
    fail(errc::fewer_than_two_points, "power curve needs at least 2 points");
  }
  for (std::size_t i = 0; i < curve.speeds.size(); ++i) {
    if (!std::isfinite(curve.speeds[i]) || !std::isfinite(curve.powers[i])) {
      fail_at(errc::parse_error, "non-finite power curve entry at index " + std::to_string(i), i);
    }
    if (curve.powers[i] < 0.0) {
      fail_at(errc::negative_power, "negative power at curve index " + std::to_string(i), i);
    }
    if (i > 0 && curve.speeds[i] <= curve.speeds[i - 1]) {
      fail_at(errc::non_monotonic_speeds,
              "curve speeds must strictly increase (index " + std::to_string(i) + ")", i);
    }
  }
  return curve;
}

double power_at_speed(const PowerCurve& curve, double w) noexcept {
  if (curve.speeds.empty()) return 0.0;
  if (w < curve.speeds.front() || w > curve.speeds.back()) return 0.0;
  const auto it = std::upper_bound(curve.speeds.begin(), curve.speeds.end(), w);
  if (it == curve.speeds.begin()) return curve.powers.front();
  if (it == curve.speeds.end()) return curve.powers.back();  // w == cut_out
  const std::size_t hi = static_cast<std::size_t>(it - curve.speeds.begin());
  const std::size_t lo = hi - 1;
  const double frac = (w - curve.speeds[lo]) / (curve.speeds[hi] - curve.speeds[lo]);
  return curve.powers[lo] + frac * (curve.powers[hi] - curve.powers[lo]);
}

EnergyResult energy_total(const WindSeries& series, const PowerCurve& curve) {
  validate_series(series);
  validate_curve(curve);
  const double step_hours = static_cast<double>(series.step) / 3600.0;
  std::vector<double> energy(series.size());
  kernels::map(series.values, energy,
               [&curve, step_hours](double w) { return power_at_speed(curve, w) * step_hours; });
  EnergyResult result;
  result.cumulative_kwh.resize(energy.size());
  double running = 0.0;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    running += energy[i];
    result.cumulative_kwh[i] = running;
  }
  result.total_kwh = running;
  return result;
}

GenerationReport generation_error(const std::string& reference_key, const WindSeries& reference,
                                  const std::map<std::string, WindSeries>& candidates,
                                  const PowerCurve& curve) {
  const EnergyResult ref_energy = energy_total(reference, curve);
  if (ref_energy.total_kwh == 0.0) {
    fail(errc::zero_reference_energy, "reference series generates no energy");
  }

  GenerationReport report;
  report.reference_key = reference_key;
  report.reference_energy_kwh = ref_energy.total_kwh;

  GenerationEntry ref_entry;
  ref_entry.key = reference_key;
  ref_entry.start_time = reference.start_time;
  ref_entry.step = reference.step;
  ref_entry.total_energy_kwh = ref_energy.total_kwh;
  ref_entry.relative_error_pct = 0.0;
  ref_entry.absolute_error_kwh = 0.0;
  ref_entry.cumulative_kwh = ref_energy.cumulative_kwh;
  report.entries.push_back(std::move(ref_entry));

  for (const auto& [key, series] : candidates) {
    if (key == reference_key) continue;
    const EnergyResult energy = energy_total(series, curve);
    GenerationEntry entry;
    entry.key = key;
    entry.start_time = series.start_time;
    entry.step = series.step;
    entry.total_energy_kwh = energy.total_kwh;
    entry.absolute_error_kwh = energy.total_kwh - ref_energy.total_kwh;
    entry.relative_error_pct = 100.0 * entry.absolute_error_kwh / ref_energy.total_kwh;
    entry.cumulative_kwh = energy.cumulative_kwh;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace windres
