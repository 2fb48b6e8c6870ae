#include "windres/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace windres::opt {

namespace {

constexpr double kAlpha = 1.0;   // reflection
constexpr double kGamma = 2.0;   // expansion
constexpr double kRho = 0.5;     // contraction
constexpr double kSigma = 0.5;   // shrink

}  // namespace

Result nelder_mead(const std::function<double(std::span<const double>)>& objective,
                   std::span<const double> x0, double initial_step, double tolerance,
                   std::size_t max_iterations) {
  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), candidate(dim);
  Result result;

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    const double spread = std::abs(values[worst] - values[best]);
    const double scale = std::max({std::abs(values[best]), std::abs(values[worst]), 1.0});
    if (spread <= tolerance * scale) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (std::size_t k = 0; k < dim; ++k) centroid[k] /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      for (std::size_t k = 0; k < dim; ++k) {
        candidate[k] = centroid[k] + coef * (centroid[k] - simplex[worst][k]);
      }
    };

    blend(kAlpha);  // reflect
    const double reflected = objective(candidate);
    if (reflected < values[best]) {
      std::vector<double> reflected_point = candidate;
      blend(kGamma);  // expand
      const double expanded = objective(candidate);
      if (expanded < reflected) {
        simplex[worst] = candidate;
        values[worst] = expanded;
      } else {
        simplex[worst] = std::move(reflected_point);
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = candidate;
      values[worst] = reflected;
      continue;
    }
    blend(-kRho);  // contract toward the centroid
    const double contracted = objective(candidate);
    if (contracted < values[worst]) {
      simplex[worst] = candidate;
      values[worst] = contracted;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        simplex[i][k] = simplex[best][k] + kSigma * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = objective(simplex[i]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

ScalarResult golden_section(const std::function<double(double)>& objective, double lo, double hi,
                            double x_tolerance, std::size_t max_iterations) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  ScalarResult result;
  for (std::size_t iter = 0; iter < max_iterations && (b - a) > x_tolerance; ++iter) {
    result.iterations = iter + 1;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  if (fc < fd) {
    result.x = c;
    result.value = fc;
  } else {
    result.x = d;
    result.value = fd;
  }
  return result;
}

}  // namespace windres::opt
