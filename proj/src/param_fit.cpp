#include "windres/param_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "windres/dist_stats.hpp"
#include "windres/kernels.hpp"
#include "windres/optimize.hpp"
#include "windres/special_functions.hpp"

namespace windres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinFitSamples = 50;
constexpr std::int64_t kMonthlyStep = 28 * 86400;
constexpr double kThetaMargin = 1e-4;  // of the sample range

void check_weibull_params(const WeibullParams& params) {
  if (!(params.beta > 0.0) || !(params.lambda > 0.0) || !std::isfinite(params.theta)) {
    fail(errc::invalid_params, "Weibull parameters require beta > 0, lambda > 0, finite theta");
  }
}

void check_gengamma_params(const GenGammaParams& params) {
  if (!(params.a > 0.0) || !(params.d > 0.0) || !(params.p > 0.0)) {
    fail(errc::invalid_params, "generalized Gamma parameters must all be positive");
  }
}

/// Uniform draw strictly inside (0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

void fit_preconditions(const WindSeries& sample, const FitOptions& options) {
  validate_series(sample);
  if (sample.size() < kMinFitSamples) {
    fail(errc::too_few_samples, "distribution fits need at least " +
                                    std::to_string(kMinFitSamples) + " samples, got " +
                                    std::to_string(sample.size()));
  }
  if (!options.force && sample.step >= kMonthlyStep) {
    fail(errc::not_weibull_like,
         "monthly-resolution samples are not Weibull-like; pass force to fit anyway");
  }
}

/// Method-of-moments start: beta from the coefficient of variation
/// (Justus approximation), lambda matching the mean.
std::pair<double, double> moment_start(std::span<const double> x) {
  const auto m = kernels::moments(x);
  const double sd = std::sqrt(m.variance_sample());
  double beta = std::pow(sd / m.mean, -1.086);
  beta = std::clamp(beta, 0.05, 100.0);
  const double lambda = m.mean / std::exp(std::lgamma(1.0 + 1.0 / beta));
  return {beta, lambda};
}

struct InnerFit {
  double beta = 0;
  double lambda = 0;
  double nll = kInf;
  bool converged = false;
};

/// 2-parameter Weibull fit of the shifted sample at a fixed location.
/// `log_x` holds ln(w_i - theta).
InnerFit weibull_inner_fit(std::span<const double> log_x, double sum_log_x, double beta0,
                           double lambda0, const FitOptions& options) {
  const double n = static_cast<double>(log_x.size());
  const auto nll = [&](std::span<const double> q) {
    const double log_beta = q[0];
    const double log_lambda = q[1];
    if (std::abs(log_beta) > 12.0 || std::abs(log_lambda) > 40.0) return kInf;
    const double beta = std::exp(log_beta);
    const double ll = n * (log_beta - beta * log_lambda) + (beta - 1.0) * sum_log_x -
                      kernels::sum_exp_scaled(log_x, beta, log_lambda);
    return std::isfinite(ll) ? -ll : kInf;
  };
  const double start[2] = {std::log(beta0), std::log(lambda0)};
  const auto result =
      opt::nelder_mead(nll, start, 0.2, options.tolerance, options.max_iterations);
  InnerFit fit;
  fit.beta = std::exp(result.x[0]);
  fit.lambda = std::exp(result.x[1]);
  fit.nll = result.value;
  fit.converged = result.converged;
  return fit;
}

}  // namespace

double weibull_pdf(double w, const WeibullParams& params) {
  check_weibull_params(params);
  if (w < params.theta) return 0.0;
  const double z = (w - params.theta) / params.lambda;
  if (z == 0.0) {
    if (params.beta > 1.0) return 0.0;
    if (params.beta == 1.0) return 1.0 / params.lambda;
    return kInf;  // density diverges at the support point for beta < 1
  }
  return params.beta / params.lambda * std::pow(z, params.beta - 1.0) *
         std::exp(-std::pow(z, params.beta));
}

double weibull_loglik(const WindSeries& sample, const WeibullParams& params) {
  check_weibull_params(params);
  if (sample.values.empty()) fail(errc::empty_series, "log-likelihood of an empty sample");
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    if (sample.values[i] < params.theta) {
      fail_at(errc::sample_outside_support,
              "value at index " + std::to_string(i) + " lies below theta", i);
    }
  }
  double ll = 0.0;
  const double log_lambda = std::log(params.lambda);
  const double log_beta = std::log(params.beta);
  for (const double w : sample.values) {
    const double x = w - params.theta;
    if (x == 0.0) {
      if (params.beta > 1.0) return -kInf;
      if (params.beta < 1.0) return kInf;
      ll += -log_lambda;
      continue;
    }
    const double lx = std::log(x);
    ll += log_beta - params.beta * log_lambda + (params.beta - 1.0) * lx -
          std::exp(params.beta * (lx - log_lambda));
  }
  return ll;
}

double gengamma_pdf(double w, const GenGammaParams& params) {
  check_gengamma_params(params);
  if (w < 0.0) return 0.0;
  if (w == 0.0) {
    if (params.d > 1.0) return 0.0;
    if (params.d == 1.0) return params.p / (params.a * std::exp(std::lgamma(params.d / params.p)));
    return kInf;
  }
  const double log_f = std::log(params.p) - params.d * std::log(params.a) +
                       (params.d - 1.0) * std::log(w) -
                       std::pow(w / params.a, params.p) - std::lgamma(params.d / params.p);
  return std::exp(log_f);
}

double gengamma_loglik(const WindSeries& sample, const GenGammaParams& params) {
  check_gengamma_params(params);
  if (sample.values.empty()) fail(errc::empty_series, "log-likelihood of an empty sample");
  double ll = 0.0;
  for (const double w : sample.values) {
    const double f = gengamma_pdf(w, params);
    if (f == 0.0) return -kInf;
    if (f == kInf) return kInf;
    ll += std::log(f);
  }
  return ll;
}

WeibullParams fit_weibull_mle(const WindSeries& sample, const FitOptions& options) {
  fit_preconditions(sample, options);
  const auto m = kernels::moments(sample.values);
  if (m.variance_population() <= 0.0) {
    fail(errc::zero_variance, "cannot fit a distribution to a constant sample");
  }
  const auto [lo_it, hi_it] = std::minmax_element(sample.values.begin(), sample.values.end());
  const double sample_min = *lo_it;
  const double range = *hi_it - sample_min;

  const double theta_hi = sample_min - kThetaMargin * range;
  const double theta_lo = sample_min - 5.0 * range;

  // moment-based initializer with theta0 below the first decile gap
  std::vector<double> sorted(sample.values);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 10),
                   sorted.end());
  const double decile = sorted[sorted.size() / 10];
  const double theta0 = std::clamp(sample_min - 0.5 * (decile - sample_min), theta_lo, theta_hi);

  std::vector<double> log_x(sample.size());

  double warm_beta = 0.0, warm_lambda = 0.0;
  const auto profile = [&](double theta) -> InnerFit {
    kernels::map(sample.values, log_x, [theta](double w) { return std::log(w - theta); });
    const double sum_log_x = kernels::sum(log_x);
    double beta0 = warm_beta, lambda0 = warm_lambda;
    if (beta0 <= 0.0) {
      std::vector<double> shifted(sample.values);
      for (double& v : shifted) v -= theta;
      std::tie(beta0, lambda0) = moment_start(shifted);
    }
    InnerFit fit = weibull_inner_fit(log_x, sum_log_x, beta0, lambda0, options);
    warm_beta = fit.beta;
    warm_lambda = fit.lambda;
    return fit;
  };

  // coarse scan, then golden-section refinement around the best bracket
  constexpr std::size_t kGridPoints = 16;
  std::vector<double> candidates;
  candidates.reserve(kGridPoints + 1);
  for (std::size_t i = 0; i < kGridPoints; ++i) {
    candidates.push_back(theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) /
                                        static_cast<double>(kGridPoints - 1));
  }
  candidates.push_back(theta0);
  std::sort(candidates.begin(), candidates.end());

  double best_theta = candidates.front();
  InnerFit best;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const InnerFit fit = profile(candidates[i]);
    if (fit.nll < best.nll) {
      best = fit;
      best_theta = candidates[i];
      best_index = i;
    }
  }

  const double bracket_lo = candidates[best_index == 0 ? 0 : best_index - 1];
  const double bracket_hi =
      candidates[best_index + 1 < candidates.size() ? best_index + 1 : best_index];
  if (bracket_hi > bracket_lo) {
    warm_beta = best.beta;
    warm_lambda = best.lambda;
    double refined_theta = best_theta;
    InnerFit refined = best;
    const auto profile_value = [&](double theta) {
      const InnerFit fit = profile(theta);
      if (fit.nll < refined.nll) {
        refined = fit;
        refined_theta = theta;
      }
      return fit.nll;
    };
    opt::golden_section(profile_value, bracket_lo, bracket_hi, 1e-7 * std::max(range, 1.0), 64);
    if (refined.nll < best.nll) {
      best = refined;
      best_theta = refined_theta;
    }
  }

  if (!best.converged) {
    fail(errc::non_convergence, "Weibull fit exhausted its iteration budget");
  }

  WeibullParams params;
  params.beta = best.beta;
  params.lambda = best.lambda;
  params.theta = best_theta;
  params.log_likelihood = -best.nll;
  params.n_samples = sample.size();
  return params;
}

GenGammaParams fit_gengamma_mle(const WindSeries& sample, const FitOptions& options) {
  fit_preconditions(sample, options);
  const auto m = kernels::moments(sample.values);
  if (m.variance_population() <= 0.0) {
    fail(errc::zero_variance, "cannot fit a distribution to a constant sample");
  }
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    if (sample.values[i] <= 0.0) {
      fail_at(errc::sample_outside_support,
              "generalized Gamma fit requires strictly positive values; index " +
                  std::to_string(i) + " is zero",
              i);
    }
  }

  std::vector<double> log_w(sample.size());
  kernels::map(sample.values, log_w, [](double w) { return std::log(w); });
  const double sum_log_w = kernels::sum(log_w);
  const double n = static_cast<double>(sample.size());

  const auto nll = [&](std::span<const double> q) {
    if (std::abs(q[0]) > 40.0 || std::abs(q[1]) > 12.0 || std::abs(q[2]) > 12.0) return kInf;
    const double log_a = q[0];
    const double d = std::exp(q[1]);
    const double p = std::exp(q[2]);
    const double ll = n * (q[2] - d * log_a - std::lgamma(d / p)) + (d - 1.0) * sum_log_w -
                      kernels::sum_exp_scaled(log_w, p, log_a);
    return std::isfinite(ll) ? -ll : kInf;
  };

  const auto [beta0, lambda0] = moment_start(sample.values);
  double start[3] = {std::log(lambda0), std::log(beta0), std::log(beta0)};
  auto result = opt::nelder_mead(nll, start, 0.25, options.tolerance, options.max_iterations);
  // restart from the incumbent with a fresh simplex; the (a, d, p)
  // likelihood has a shallow ridge that a single simplex pass can stall on
  auto polished = opt::nelder_mead(nll, result.x, 0.05, options.tolerance, options.max_iterations);
  if (polished.value < result.value) result = std::move(polished);

  if (!result.converged) {
    fail(errc::non_convergence, "generalized Gamma fit exhausted its iteration budget");
  }

  GenGammaParams params;
  params.a = std::exp(result.x[0]);
  params.d = std::exp(result.x[1]);
  params.p = std::exp(result.x[2]);
  params.log_likelihood = -result.value;
  params.n_samples = sample.size();
  return params;
}

WindSeries weibull_sample(const WeibullParams& params, std::size_t count, std::uint64_t seed) {
  check_weibull_params(params);
  if (count < 1) fail(errc::invalid_params, "sample count must be >= 1");
  std::mt19937_64 rng(seed);
  WindSeries series;
  series.start_time = 0;
  series.step = 600;
  series.source_step = 600;
  series.provenance = Provenance::raw;
  series.values.resize(count);
  const double inv_beta = 1.0 / params.beta;
  for (double& w : series.values) {
    w = params.theta + params.lambda * std::pow(-std::log(uniform01(rng)), inv_beta);
  }
  return series;
}

std::vector<double> gengamma_draws(const GenGammaParams& params, std::size_t count,
                                   std::uint64_t seed) {
  check_gengamma_params(params);
  if (count < 1) fail(errc::invalid_params, "sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> draws(count);
  const double shape = params.d / params.p;
  for (double& w : draws) {
    const double x = sf::inv_reg_lower_gamma(shape, uniform01(rng));
    w = params.a * std::pow(x, 1.0 / params.p);
  }
  return draws;
}

double weibull_quantile(const WeibullParams& params, double q) {
  check_weibull_params(params);
  if (!(q >= 0.0) || q >= 1.0) fail(errc::invalid_params, "quantile level must be in [0, 1)");
  return params.theta + params.lambda * std::pow(-std::log1p(-q), 1.0 / params.beta);
}

double gengamma_quantile(const GenGammaParams& params, double q) {
  check_gengamma_params(params);
  if (!(q >= 0.0) || q >= 1.0) fail(errc::invalid_params, "quantile level must be in [0, 1)");
  const double x = sf::inv_reg_lower_gamma(params.d / params.p, q);
  return params.a * std::pow(x, 1.0 / params.p);
}

namespace {

std::vector<std::pair<double, double>> qq_pairs(const WindSeries& sample,
                                                std::vector<double> model_quantiles) {
  std::vector<double> observed(sample.values);
  std::sort(observed.begin(), observed.end());
  std::sort(model_quantiles.begin(), model_quantiles.end());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    pairs.emplace_back(observed[i], model_quantiles[i]);
  }
  return pairs;
}

}  // namespace

std::vector<std::pair<double, double>> qq_data(const WindSeries& sample,
                                               const WeibullParams& params, std::uint64_t seed,
                                               QqMode mode) {
  if (sample.values.empty()) fail(errc::empty_series, "QQ data of an empty sample");
  const std::size_t n = sample.size();
  if (mode == QqMode::sampled) {
    return qq_pairs(sample, weibull_sample(params, n, seed).values);
  }
  std::vector<double> quantiles(n);
  for (std::size_t k = 0; k < n; ++k) {
    quantiles[k] = weibull_quantile(params, (static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  return qq_pairs(sample, std::move(quantiles));
}

std::vector<std::pair<double, double>> qq_data(const WindSeries& sample,
                                               const GenGammaParams& params, std::uint64_t seed,
                                               QqMode mode) {
  if (sample.values.empty()) fail(errc::empty_series, "QQ data of an empty sample");
  const std::size_t n = sample.size();
  if (mode == QqMode::sampled) {
    return qq_pairs(sample, gengamma_draws(params, n, seed));
  }
  std::vector<double> quantiles(n);
  for (std::size_t k = 0; k < n; ++k) {
    quantiles[k] =
        gengamma_quantile(params, (static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  return qq_pairs(sample, std::move(quantiles));
}

}  // namespace windres
