#include "windres/dist_stats.hpp"

#include <algorithm>
#include <cmath>

#include "windres/kernels.hpp"

namespace windres {

double EmpiricalCdf::eval(double w) const noexcept {
  const auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), w);
  return static_cast<double>(it - sorted_values.begin()) / static_cast<double>(n());
}

EmpiricalCdf ecdf(const WindSeries& series) {
  validate_series(series);
  return ecdf_from_values(series.values);
}

EmpiricalCdf ecdf_from_values(std::vector<double> values) {
  if (values.empty()) fail(errc::empty_series, "cannot build an ECDF from an empty sample");
  std::sort(values.begin(), values.end());
  return EmpiricalCdf{std::move(values)};
}

double kolmogorov_sf(double z) noexcept {
  if (z <= 0.05) return 1.0;  // tail terms are below 1 ulp here
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    const double term = 2.0 * std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) * z * z);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  if (a.n() == 0 || b.n() == 0) fail(errc::empty_series, "KS test requires non-empty samples");
  const auto& x = a.sorted_values;
  const auto& y = b.sorted_values;
  const double inv_m = 1.0 / static_cast<double>(x.size());
  const double inv_n = 1.0 / static_cast<double>(y.size());

  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    // next pooled point; advance past all duplicates in both samples so
    // F_a and F_b are evaluated at their right limits
    double v;
    if (j >= y.size() || (i < x.size() && x[i] <= y[j])) v = x[i];
    else v = y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    const double diff = std::abs(static_cast<double>(i) * inv_m - static_cast<double>(j) * inv_n);
    if (diff > d) d = diff;
  }

  KsResult result;
  result.d_stat = d;
  result.n1 = x.size();
  result.n2 = y.size();
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double effective = m * n / (m + n);
  result.p_value = kolmogorov_sf(d * std::sqrt(effective));
  result.significant = result.p_value <= kKsAlpha;
  return result;
}

std::vector<std::pair<double, double>> cdf_difference_curve(const EmpiricalCdf& reference,
                                                            const EmpiricalCdf& other,
                                                            std::span<const double> grid) {
  if (grid.empty()) fail(errc::empty_grid, "CDF difference needs a non-empty grid");
  if (reference.n() == 0 || other.n() == 0) {
    fail(errc::empty_series, "CDF difference requires non-empty samples");
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(grid.size());
  for (const double w : grid) {
    curve.emplace_back(w, other.eval(w) - reference.eval(w));
  }
  return curve;
}

SummaryStats summary(const WindSeries& series) {
  validate_series(series);
  if (series.size() < 2) {
    fail(errc::too_few_samples, "summary statistics need at least 2 values");
  }
  const auto m = kernels::moments(series.values);
  SummaryStats stats;
  stats.mean = m.mean;
  stats.variance_population = m.variance_population();
  stats.variance_sample = m.variance_sample();
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  stats.min = *lo;
  stats.max = *hi;
  stats.n = series.size();
  return stats;
}

double scott_bandwidth(const WindSeries& series) {
  const SummaryStats stats = summary(series);
  if (stats.variance_sample <= 0.0) {
    fail(errc::zero_variance, "Scott bandwidth is undefined for a constant sample");
  }
  return std::sqrt(stats.variance_sample) *
         std::pow(static_cast<double>(stats.n), -0.2);
}

std::vector<std::pair<double, double>> kde_density(const WindSeries& series, const KdeSpec& spec,
                                                   std::span<const double> grid) {
  validate_series(series);
  if (grid.empty()) fail(errc::empty_grid, "KDE needs a non-empty grid");
  if (!(spec.bandwidth > 0.0)) fail(errc::invalid_params, "KDE bandwidth must be positive");
  std::vector<double> density(grid.size());
  kernels::kde_evaluate(series.values, spec.bandwidth, grid, density);
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) out.emplace_back(grid[g], density[g]);
  return out;
}

std::vector<double> default_kde_grid(const WindSeries& series, double bandwidth,
                                     std::size_t points) {
  validate_series(series);
  if (points < 2) fail(errc::empty_grid, "KDE grid needs at least 2 points");
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  const double a = *lo - 3.0 * bandwidth;
  const double b = *hi + 3.0 * bandwidth;
  std::vector<double> grid(points);
  const double h = (b - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = a + static_cast<double>(i) * h;
  return grid;
}

}  // namespace windres
