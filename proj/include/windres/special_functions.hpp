#pragma once

namespace windres::sf {

/// Regularized lower incomplete gamma P(s, x) for s > 0, x >= 0.
/// Series expansion for x < s + 1, Lentz continued fraction otherwise.
double reg_lower_gamma(double s, double x) noexcept;

/// Inverse of reg_lower_gamma in x: returns x with P(s, x) = q for
/// q in [0, 1). Bracketing bisection polished with Newton steps.
double inv_reg_lower_gamma(double s, double q) noexcept;

}  // namespace windres::sf
