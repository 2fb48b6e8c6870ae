#pragma once

#include <span>
#include <utility>
#include <vector>

#include "windres/types.hpp"

namespace windres {

/// Right-continuous empirical CDF over a sorted copy of the sample.
struct EmpiricalCdf {
  std::vector<double> sorted_values;

  std::size_t n() const noexcept { return sorted_values.size(); }
  /// P(X <= w) = (count of values <= w) / n.
  double eval(double w) const noexcept;
};

EmpiricalCdf ecdf(const WindSeries& series);
EmpiricalCdf ecdf_from_values(std::vector<double> values);

/// Survival function of the Kolmogorov distribution,
/// 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 z^2), truncated when a term drops
/// below 1e-16 and clamped to [0, 1]. For z <= 0.05 the value is 1 to
/// double precision and is returned directly.
double kolmogorov_sf(double z) noexcept;

/// Two-sample KS test. D is the supremum of |F_a - F_b| over the pooled
/// sample points (both step limits checked); the p-value uses the
/// asymptotic Kolmogorov distribution with effective size m*n/(m+n).
KsResult ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// F_other(w) - F_reference(w) at each grid point.
std::vector<std::pair<double, double>> cdf_difference_curve(const EmpiricalCdf& reference,
                                                            const EmpiricalCdf& other,
                                                            std::span<const double> grid);

struct SummaryStats {
  double mean = 0;
  double variance_population = 0;
  double variance_sample = 0;
  double min = 0;
  double max = 0;
  std::size_t n = 0;
};

SummaryStats summary(const WindSeries& series);

/// Scott's rule: sample standard deviation * n^(-1/5).
double scott_bandwidth(const WindSeries& series);

struct KdeSpec {
  double bandwidth = 0;  // Gaussian kernel, normalized
};

/// Gaussian KDE evaluated on the grid; integrates to 1 over the real line.
std::vector<std::pair<double, double>> kde_density(const WindSeries& series, const KdeSpec& spec,
                                                   std::span<const double> grid);

/// Equally spaced grid of `points` values over [min - 3h, max + 3h].
std::vector<double> default_kde_grid(const WindSeries& series, double bandwidth,
                                     std::size_t points = 512);

}  // namespace windres
