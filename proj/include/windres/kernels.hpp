#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace windres::kernels {

struct Moments {
  std::size_t n = 0;
  double mean = 0;
  double sum_sq_dev = 0;  // sum of squared deviations from the mean

  double variance_population() const noexcept { return n > 0 ? sum_sq_dev / static_cast<double>(n) : 0.0; }
  double variance_sample() const noexcept { return n > 1 ? sum_sq_dev / static_cast<double>(n - 1) : 0.0; }
};

/// Thread budget for the parallel kernels. Reads WINDRES_THREADS once
/// (0 or unset = OpenMP default); always 1 when built without OpenMP.
int max_threads() noexcept;

/// Reduction chunk size. Partial sums are always formed over fixed
/// [k*kChunk, (k+1)*kChunk) windows and combined in index order, so the
/// dispatched kernels return the same bits for any thread count.
inline constexpr std::size_t kChunk = 4096;

// Serial reference implementations. These are the naive single-pass
// formulations; the unit tests and the benchmark compare the dispatched
// kernels against them.
namespace serial {

double sum(std::span<const double> x) noexcept;
Moments moments(std::span<const double> x) noexcept;
void block_average(std::span<const double> in, std::size_t t, std::span<double> out) noexcept;
void kde_evaluate(std::span<const double> sample, double bandwidth,
                  std::span<const double> grid, std::span<double> out) noexcept;
/// sum_i exp(scale * (log_x[i] - shift))
double sum_exp_scaled(std::span<const double> log_x, double scale, double shift) noexcept;

}  // namespace serial

// Dispatched kernels: OpenMP-parallel when available, bit-identical to a
// single-threaded run of themselves at any thread count.

double sum(std::span<const double> x) noexcept;
Moments moments(std::span<const double> x) noexcept;
void block_average(std::span<const double> in, std::size_t t, std::span<double> out) noexcept;
void kde_evaluate(std::span<const double> sample, double bandwidth,
                  std::span<const double> grid, std::span<double> out) noexcept;
double sum_exp_scaled(std::span<const double> log_x, double scale, double shift) noexcept;

/// Elementwise out[i] = f(in[i]); f must be pure.
template <class F>
void map(std::span<const double> in, std::span<double> out, F f) {
  const auto n = static_cast<std::int64_t>(in.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
}

}  // namespace windres::kernels
