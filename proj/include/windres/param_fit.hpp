#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "windres/types.hpp"

namespace windres {

/// Three-parameter Weibull density; 0 below the support point theta.
double weibull_pdf(double w, const WeibullParams& params);

/// Sum of log densities. Throws SampleOutsideSupport when a value lies
/// strictly below theta; a value exactly at theta yields -inf for
/// beta > 1 (and +inf for beta < 1, where the density diverges).
double weibull_loglik(const WindSeries& sample, const WeibullParams& params);

/// Generalized Gamma density f(w; a, d, p); 0 for w < 0.
double gengamma_pdf(double w, const GenGammaParams& params);

double gengamma_loglik(const WindSeries& sample, const GenGammaParams& params);

struct FitOptions {
  /// Bypass the monthly-resolution guard (samples at step >= 28 days are
  /// otherwise refused as not Weibull-like).
  bool force = false;
  double tolerance = 1e-8;          // relative log-likelihood change
  std::size_t max_iterations = 10000;
};

/// Maximum-likelihood fit of the three-parameter Weibull. The location
/// is profiled over a bounded scalar search with theta <= min(sample) -
/// 1e-4 * range, each profile point solved by a deterministic
/// Nelder-Mead over (log beta, log lambda) warm-started from a
/// method-of-moments initializer. Deterministic given the sample.
WeibullParams fit_weibull_mle(const WindSeries& sample, const FitOptions& options = {});

/// Maximum-likelihood fit of the generalized Gamma over
/// (log a, log d, log p). Requires strictly positive values: a zero
/// sample value makes this likelihood unbounded and is refused.
GenGammaParams fit_gengamma_mle(const WindSeries& sample, const FitOptions& options = {});

/// Inverse-CDF draws w = theta + lambda * (-ln U)^(1/beta) from a seeded
/// deterministic generator; identical sequences for identical seeds.
WindSeries weibull_sample(const WeibullParams& params, std::size_t count, std::uint64_t seed);

std::vector<double> gengamma_draws(const GenGammaParams& params, std::size_t count,
                                   std::uint64_t seed);

double weibull_quantile(const WeibullParams& params, double q);
double gengamma_quantile(const GenGammaParams& params, double q);

enum class QqMode {
  sampled,      // sorted sample vs. sorted model draws of equal length
  theoretical,  // sorted sample vs. model quantiles at (k - 0.5) / n
};

std::vector<std::pair<double, double>> qq_data(const WindSeries& sample,
                                               const WeibullParams& params, std::uint64_t seed,
                                               QqMode mode = QqMode::sampled);
std::vector<std::pair<double, double>> qq_data(const WindSeries& sample,
                                               const GenGammaParams& params, std::uint64_t seed,
                                               QqMode mode = QqMode::sampled);

}  // namespace windres
