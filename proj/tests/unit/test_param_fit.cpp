#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "windres/param_fit.hpp"
#include "windres/special_functions.hpp"

using namespace windres;

namespace {

WindSeries make(std::vector<double> values, std::int64_t step = 600) {
  WindSeries s;
  s.step = step;
  s.source_step = step;
  s.values = std::move(values);
  return s;
}

WeibullParams weibull(double beta, double lambda, double theta) {
  WeibullParams p;
  p.beta = beta;
  p.lambda = lambda;
  p.theta = theta;
  return p;
}

GenGammaParams gengamma(double a, double d, double p) {
  GenGammaParams g;
  g.a = a;
  g.d = d;
  g.p = p;
  return g;
}

double rel_err(double estimate, double truth) { return std::abs(estimate - truth) / std::abs(truth); }

}  // namespace

TEST_CASE("weibull_pdf closed forms") {
  CHECK(weibull_pdf(0.0, weibull(1, 2, 0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weibull_pdf(2.0, weibull(2, 2, 0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(weibull_pdf(-0.5, weibull(2, 2, 0)) == 0.0);
  CHECK(weibull_pdf(0.9, weibull(2, 2, 1.0)) == 0.0);  // below theta
}

TEST_CASE("weibull_pdf rejects invalid parameters") {
  CHECK_THROWS_WITH_AS(weibull_pdf(1.0, weibull(-1, 2, 0)), doctest::Contains("InvalidParams"),
                       Error);
  CHECK_THROWS_AS(weibull_pdf(1.0, weibull(1, 0, 0)), Error);
}

TEST_CASE("weibull_pdf integrates to 1") {
  for (const auto& p : {weibull(1, 1, 0), weibull(1.8, 3, 0.5), weibull(2, 8, 0.5),
                        weibull(3.4, 2, -1.0)}) {
    const double integral = oracle::adaptive_simpson(
        [&](double w) { return weibull_pdf(w, p); }, p.theta, p.theta + 50.0 * p.lambda, 1e-9);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("weibull_loglik closed forms") {
  CHECK(weibull_loglik(make({1.0}), weibull(1, 1, 0)) == doctest::Approx(-1.0).epsilon(1e-15));
  const double single = weibull_loglik(make({1.7}), weibull(2, 3, 0.2));
  const double twice = weibull_loglik(make({1.7, 1.7}), weibull(2, 3, 0.2));
  CHECK(twice == doctest::Approx(2.0 * single).epsilon(1e-14));
}

TEST_CASE("weibull_loglik flags samples outside the support") {
  try {
    weibull_loglik(make({1.0, 0.4}), weibull(2, 3, 0.5));
    FAIL("expected SampleOutsideSupport");
  } catch (const Error& e) {
    CHECK(e.code() == errc::sample_outside_support);
    CHECK(e.location() == 1);
  }
  // value exactly at theta with beta > 1: density is 0, log-likelihood -inf
  CHECK(weibull_loglik(make({0.5, 1.0}), weibull(2, 3, 0.5)) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("gengamma_pdf reduces to Weibull at d == p") {
  CHECK(gengamma_pdf(2.0, gengamma(2, 2, 2)) ==
        doctest::Approx(weibull_pdf(2.0, weibull(2, 2, 0))).epsilon(1e-14));
  CHECK(gengamma_pdf(0.0, gengamma(1, 1, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gengamma_pdf(-0.1, gengamma(1, 1, 1)) == 0.0);
}

TEST_CASE("gengamma_pdf equals weibull_pdf on a grid when d == p") {
  for (const auto& [a, dp] : {std::pair{2.0, 2.0}, {8.0, 1.6}, {3.0, 1.0}}) {
    double max_diff = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double w = 5.0 * a * static_cast<double>(i) / 999.0;
      const double diff =
          std::abs(gengamma_pdf(w, gengamma(a, dp, dp)) - weibull_pdf(w, weibull(dp, a, 0)));
      max_diff = std::max(max_diff, diff);
    }
    CHECK(max_diff <= 1e-10);
  }
}

TEST_CASE("gengamma_pdf integrates to 1") {
  for (const auto& p : {gengamma(2, 2, 2), gengamma(3, 4, 1.5), gengamma(1, 1, 1)}) {
    const double integral = oracle::adaptive_simpson(
        [&](double w) { return gengamma_pdf(w, p); }, 0.0, 60.0 * p.a, 1e-9);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("reg_lower_gamma and its inverse are consistent") {
  for (const double s : {0.5, 1.0, 2.5, 7.0}) {
    for (const double q : {0.001, 0.1, 0.5, 0.9, 0.999}) {
      const double x = sf::inv_reg_lower_gamma(s, q);
      CHECK(sf::reg_lower_gamma(s, x) == doctest::Approx(q).epsilon(1e-10));
    }
  }
  CHECK(sf::reg_lower_gamma(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(sf::inv_reg_lower_gamma(1.0, 0.0) == 0.0);
}

TEST_CASE("fit_weibull_mle recovers generator parameters within 2%") {
  const auto sample = make(oracle::weibull_draws(2.0, 8.0, 0.5, 100000, 42));
  const auto fit = fit_weibull_mle(sample);
  CHECK(rel_err(fit.beta, 2.0) < 0.02);
  CHECK(rel_err(fit.lambda, 8.0) < 0.02);
  CHECK(rel_err(fit.theta, 0.5) < 0.02);
  CHECK(fit.n_samples == 100000);
  // reported log-likelihood matches an independent evaluation (the fit
  // sums in chunks, the evaluation serially; only rounding may differ)
  CHECK(fit.log_likelihood ==
        doctest::Approx(weibull_loglik(sample, fit)).epsilon(1e-12));

  // deterministic given the sample
  const auto again = fit_weibull_mle(sample);
  CHECK(again.beta == fit.beta);
  CHECK(again.lambda == fit.lambda);
  CHECK(again.theta == fit.theta);
}

TEST_CASE("fit_weibull_mle recovers the exponential shape") {
  const auto sample = make(oracle::weibull_draws(1.0, 3.0, 0.0, 100000, 43));
  const auto fit = fit_weibull_mle(sample);
  CHECK(fit.beta >= 0.97);
  CHECK(fit.beta <= 1.03);
}

TEST_CASE("fit_weibull_mle beats its moment-based initializer") {
  const auto sample = make(oracle::weibull_draws(1.6, 5.0, 1.0, 5000, 44));
  const auto fit = fit_weibull_mle(sample);

  // rebuild the documented initializer independently
  std::vector<double> sorted(sample.values);
  std::sort(sorted.begin(), sorted.end());
  const double min = sorted.front();
  const double decile = sorted[sorted.size() / 10];
  const double theta0 = min - 0.5 * (decile - min);
  double mean = 0.0;
  for (const double v : sorted) mean += v - theta0;
  mean /= static_cast<double>(sorted.size());
  double ssq = 0.0;
  for (const double v : sorted) ssq += (v - theta0 - mean) * (v - theta0 - mean);
  const double sd = std::sqrt(ssq / static_cast<double>(sorted.size() - 1));
  const double beta0 = std::pow(sd / mean, -1.086);
  const double lambda0 = mean / std::exp(std::lgamma(1.0 + 1.0 / beta0));

  const double init_ll = weibull_loglik(sample, weibull(beta0, lambda0, theta0));
  CHECK(fit.log_likelihood >= init_ll);
}

TEST_CASE("fit_weibull_mle keeps theta strictly below the sample minimum") {
  const auto sample = make(oracle::weibull_draws(0.9, 2.0, 0.0, 2000, 45));
  const auto fit = fit_weibull_mle(sample);
  const double min = *std::min_element(sample.values.begin(), sample.values.end());
  CHECK(fit.theta < min);
}

TEST_CASE("fit_weibull_mle preconditions") {
  CHECK_THROWS_WITH_AS(fit_weibull_mle(make(std::vector<double>(100, 3.0))),
                       doctest::Contains("ZeroVariance"), Error);
  CHECK_THROWS_WITH_AS(fit_weibull_mle(make({1, 2, 3})), doctest::Contains("TooFewSamples"),
                       Error);
}

TEST_CASE("monthly-resolution samples are refused unless forced") {
  auto sample = make(oracle::weibull_draws(2.0, 8.0, 0.0, 100, 46), 30 * 86400);
  CHECK_THROWS_WITH_AS(fit_weibull_mle(sample), doctest::Contains("NotWeibullLike"), Error);
  FitOptions options;
  options.force = true;
  CHECK_NOTHROW(fit_weibull_mle(sample, options));
  CHECK_THROWS_AS(fit_gengamma_mle(sample), Error);
}

TEST_CASE("fit_gengamma_mle recovers generator parameters within 5%") {
  const auto sample = make(oracle::gengamma_draws(2.0, 2.0, 2.0, 100000, 47));
  const auto fit = fit_gengamma_mle(sample);
  CHECK(rel_err(fit.a, 2.0) < 0.05);
  CHECK(rel_err(fit.d, 2.0) < 0.05);
  CHECK(rel_err(fit.p, 2.0) < 0.05);
}

TEST_CASE("fit_gengamma_mle sees d ~= p on Weibull data") {
  const auto sample = make(oracle::weibull_draws(1.7, 6.0, 0.0, 100000, 48));
  const auto fit = fit_gengamma_mle(sample);
  CHECK(std::abs(fit.d - fit.p) / fit.p < 0.10);
}

TEST_CASE("fit_gengamma_mle refuses zeros") {
  auto values = oracle::weibull_draws(2.0, 8.0, 0.0, 200, 49);
  values[17] = 0.0;
  CHECK_THROWS_WITH_AS(fit_gengamma_mle(make(std::move(values))),
                       doctest::Contains("SampleOutsideSupport"), Error);
}

TEST_CASE("weibull_sample determinism and support") {
  const auto params = weibull(2.0, 8.0, 0.5);
  const auto a = weibull_sample(params, 1000, 7);
  const auto b = weibull_sample(params, 1000, 7);
  const auto c = weibull_sample(params, 1000, 8);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (const double w : a.values) CHECK(w >= params.theta);
}

TEST_CASE("weibull inverse-CDF algebra") {
  // U = e^{-1}: w = theta + lambda * (-ln U)^{1/beta} = theta + lambda
  const auto params = weibull(1.0, 2.0, 1.0);
  const double q = 1.0 - std::exp(-1.0);  // so that -ln(1-q) = 1
  CHECK(weibull_quantile(params, q) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("weibull_sample matches the theoretical CDF") {
  const auto params = weibull(2.0, 8.0, 0.5);
  auto draws = weibull_sample(params, 100000, 11).values;
  std::sort(draws.begin(), draws.end());
  double max_gap = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double z = std::pow((draws[i] - params.theta) / params.lambda, params.beta);
    const double cdf = 1.0 - std::exp(-z);
    const double empirical = (static_cast<double>(i) + 1.0) / static_cast<double>(draws.size());
    max_gap = std::max(max_gap, std::abs(cdf - empirical));
  }
  CHECK(max_gap < 0.006);  // KS_0.999 / sqrt(1e5) ~ 0.0062
}

TEST_CASE("qq_data identity when the draws reproduce the sample") {
  const auto params = weibull(2.0, 8.0, 0.5);
  const auto sample = weibull_sample(params, 500, 123);
  const auto pairs = qq_data(sample, params, 123, QqMode::sampled);
  REQUIRE(pairs.size() == 500);
  for (const auto& [x, y] : pairs) CHECK(x == y);
}

TEST_CASE("qq_data stays near the identity for a self-fitted model") {
  const auto params = weibull(2.0, 8.0, 0.5);
  const auto sample = make(oracle::weibull_draws(2.0, 8.0, 0.5, 10000, 50));
  const auto pairs = qq_data(sample, params, 51, QqMode::sampled);
  std::size_t within = 0;
  for (const auto& [x, y] : pairs) {
    if (std::abs(x - y) <= 0.1 * params.lambda) ++within;
  }
  CHECK(static_cast<double>(within) / static_cast<double>(pairs.size()) >= 0.99);
}

TEST_CASE("qq_data theoretical mode uses plotting positions") {
  const auto params = weibull(2.0, 8.0, 0.0);
  const auto sample = make({1.0, 2.0, 3.0, 4.0});
  const auto pairs = qq_data(sample, params, 0, QqMode::theoretical);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0].second == doctest::Approx(weibull_quantile(params, 0.125)));
  CHECK(pairs[3].second == doctest::Approx(weibull_quantile(params, 0.875)));
}

TEST_CASE("qq_data of an empty sample fails") {
  CHECK_THROWS_AS(qq_data(make({}), weibull(2, 8, 0), 1), Error);
}

TEST_CASE("gengamma draws match gengamma quantiles") {
  const auto params = gengamma(2.0, 3.0, 1.5);
  auto draws = gengamma_draws(params, 20000, 13);
  std::sort(draws.begin(), draws.end());
  // compare a few quantiles against the inverse CDF
  for (const double q : {0.1, 0.5, 0.9}) {
    const double theoretical = gengamma_quantile(params, q);
    const double empirical = draws[static_cast<std::size_t>(q * 20000.0)];
    CHECK(empirical == doctest::Approx(theoretical).epsilon(0.03));
  }
}
