#include "windres/special_functions.hpp"

#include <cmath>
#include <limits>

namespace windres::sf {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// P(s, x) via the lower series, valid and fast for x < s + 1.
double gamma_p_series(double s, double x) noexcept {
  double term = 1.0 / s;
  double sum = term;
  double a = s;
  for (int i = 0; i < kMaxIterations; ++i) {
    a += 1.0;
    term *= x / a;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Q(s, x) via the Lentz continued fraction, valid for x >= s + 1.
double gamma_q_cf(double s, double x) noexcept {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace

double reg_lower_gamma(double s, double x) noexcept {
  if (!(s > 0.0) || !(x >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return gamma_p_series(s, x);
  return 1.0 - gamma_q_cf(s, x);
}

double inv_reg_lower_gamma(double s, double q) noexcept {
  if (!(s > 0.0) || !(q >= 0.0) || q >= 1.0) {
    if (q == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (q == 0.0) return 0.0;

  // bracket the root
  double hi = s > 1.0 ? s : 1.0;
  for (int i = 0; i < 200 && reg_lower_gamma(s, hi) < q; ++i) hi *= 2.0;
  double lo = 0.0;
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    if (reg_lower_gamma(s, x) < q) lo = x;
    else hi = x;
    x = 0.5 * (lo + hi);
    if (hi - lo <= kEps * (std::abs(x) + kEps)) break;
  }
  // Newton polish: dP/dx = x^(s-1) e^(-x) / Gamma(s)
  for (int i = 0; i < 4; ++i) {
    const double f = reg_lower_gamma(s, x) - q;
    const double logd = (s - 1.0) * std::log(x) - x - std::lgamma(s);
    const double d = std::exp(logd);
    if (!(d > 0.0)) break;
    const double next = x - f / d;
    if (next > lo && next < hi) x = next;
    else break;
  }
  return x;
}

}  // namespace windres::sf
