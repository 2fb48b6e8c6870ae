#include "windres/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace windres::kernels {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684;

int resolve_threads() noexcept {
#ifdef _OPENMP
  const char* env = std::getenv("WINDRES_THREADS");
  if (env != nullptr) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) {
      const int hw = omp_get_max_threads();
      return cap < hw ? static_cast<int>(cap) : hw;
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline std::size_t chunk_count(std::size_t n) noexcept { return (n + kChunk - 1) / kChunk; }

inline double gaussian_kernel_sum(std::span<const double> sample, double h, double x) noexcept {
  double acc = 0.0;
  for (const double s : sample) {
    const double u = (x - s) / h;
    acc += std::exp(-0.5 * u * u);
  }
  return acc;
}

}  // namespace

int max_threads() noexcept {
  static const int cached = resolve_threads();
  return cached;
}

namespace serial {

double sum(std::span<const double> x) noexcept {
  double acc = 0.0;
  for (const double v : x) acc += v;
  return acc;
}

Moments moments(std::span<const double> x) noexcept {
  Moments m;
  m.n = x.size();
  if (m.n == 0) return m;
  m.mean = sum(x) / static_cast<double>(m.n);
  double acc = 0.0;
  for (const double v : x) {
    const double d = v - m.mean;
    acc += d * d;
  }
  m.sum_sq_dev = acc;
  return m;
}

void block_average(std::span<const double> in, std::size_t t, std::span<double> out) noexcept {
  for (std::size_t b = 0; b < out.size(); ++b) {
    double acc = 0.0;
    for (std::size_t i = b * t; i < (b + 1) * t; ++i) acc += in[i];
    out[b] = acc / static_cast<double>(t);
  }
}

void kde_evaluate(std::span<const double> sample, double h, std::span<const double> grid,
                  std::span<double> out) noexcept {
  const double norm = kInvSqrt2Pi / (static_cast<double>(sample.size()) * h);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out[g] = norm * gaussian_kernel_sum(sample, h, grid[g]);
  }
}

double sum_exp_scaled(std::span<const double> log_x, double scale, double shift) noexcept {
  double acc = 0.0;
  for (const double lx : log_x) acc += std::exp(scale * (lx - shift));
  return acc;
}

}  // namespace serial

double sum(std::span<const double> x) noexcept {
  const std::size_t n = x.size();
  if (n <= kChunk) return serial::sum(x);
  const auto chunks = static_cast<std::int64_t>(chunk_count(n));
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    partial[static_cast<std::size_t>(c)] = serial::sum(x.subspan(lo, hi - lo));
  }
  return serial::sum(partial);
}

Moments moments(std::span<const double> x) noexcept {
  Moments m;
  m.n = x.size();
  if (m.n == 0) return m;
  m.mean = sum(x) / static_cast<double>(m.n);
  const std::size_t n = x.size();
  if (n <= kChunk) {
    double acc = 0.0;
    for (const double v : x) {
      const double d = v - m.mean;
      acc += d * d;
    }
    m.sum_sq_dev = acc;
    return m;
  }
  const auto chunks = static_cast<std::int64_t>(chunk_count(n));
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
  const double mean = m.mean;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = x[i] - mean;
      acc += d * d;
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }
  m.sum_sq_dev = serial::sum(partial);
  return m;
}

void block_average(std::span<const double> in, std::size_t t, std::span<double> out) noexcept {
  const auto blocks = static_cast<std::int64_t>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t b = 0; b < blocks; ++b) {
    double acc = 0.0;
    const std::size_t lo = static_cast<std::size_t>(b) * t;
    for (std::size_t i = lo; i < lo + t; ++i) acc += in[i];
    out[static_cast<std::size_t>(b)] = acc / static_cast<double>(t);
  }
}

void kde_evaluate(std::span<const double> sample, double h, std::span<const double> grid,
                  std::span<double> out) noexcept {
  const double norm = kInvSqrt2Pi / (static_cast<double>(sample.size()) * h);
  const auto g_count = static_cast<std::int64_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t g = 0; g < g_count; ++g) {
    out[static_cast<std::size_t>(g)] =
        norm * gaussian_kernel_sum(sample, h, grid[static_cast<std::size_t>(g)]);
  }
}

double sum_exp_scaled(std::span<const double> log_x, double scale, double shift) noexcept {
  const std::size_t n = log_x.size();
  if (n <= kChunk) return serial::sum_exp_scaled(log_x, scale, shift);
  const auto chunks = static_cast<std::int64_t>(chunk_count(n));
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    partial[static_cast<std::size_t>(c)] =
        serial::sum_exp_scaled(log_x.subspan(lo, hi - lo), scale, shift);
  }
  return serial::sum(partial);
}

}  // namespace windres::kernels
