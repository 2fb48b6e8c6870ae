#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace windres::opt {

struct Result {
  std::vector<double> x;
  double value = 0;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Deterministic Nelder-Mead minimizer. The initial simplex places one
/// vertex at x0 and the others at x0 + initial_step along each axis.
/// Converges when the relative value spread across the simplex falls
/// below `tolerance`.
Result nelder_mead(const std::function<double(std::span<const double>)>& objective,
                   std::span<const double> x0, double initial_step, double tolerance,
                   std::size_t max_iterations);

struct ScalarResult {
  double x = 0;
  double value = 0;
  std::size_t iterations = 0;
};

/// Golden-section minimization on [lo, hi] to an absolute x tolerance.
ScalarResult golden_section(const std::function<double(double)>& objective, double lo, double hi,
                            double x_tolerance, std::size_t max_iterations);

}  // namespace windres::opt
