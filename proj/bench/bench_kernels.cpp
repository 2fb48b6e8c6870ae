// Timing comparison of the serial reference kernels against the
// dispatched (OpenMP) kernels. Build and run:
//   cmake --build build && ./build/bench/bench_kernels [n]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <span>
#include <vector>

#include "windres/kernels.hpp"

namespace k = windres::kernels;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

template <class F>
double time_best_of(int reps, F f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = clock_type::now();
    f();
    best = std::min(best, ms_since(start));
  }
  return best;
}

void print_row(const char* kernel, std::size_t n, double serial_ms, double parallel_ms,
               double max_diff) {
  std::printf("%-16s n=%-9zu serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   max|diff| %.3g\n",
              kernel, n, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 4 * 1000 * 1000;
  if (argc > 1) n = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
  std::printf("threads available to the parallel kernels: %d\n", k::max_threads());

  std::mt19937_64 rng(7);
  std::vector<double> values(n);
  for (double& v : values) v = 25.0 * (static_cast<double>(rng() >> 11) * 0x1p-53);
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(values[i] + 0.1);

  {
    double a = 0, b = 0;
    const double ts = time_best_of(5, [&] { a = k::serial::sum(values); });
    const double tp = time_best_of(5, [&] { b = k::sum(values); });
    print_row("sum", n, ts, tp, std::abs(a - b));
  }
  {
    k::Moments a, b;
    const double ts = time_best_of(5, [&] { a = k::serial::moments(values); });
    const double tp = time_best_of(5, [&] { b = k::moments(values); });
    print_row("moments", n, ts, tp, std::abs(a.sum_sq_dev - b.sum_sq_dev));
  }
  {
    const std::size_t t = 18;
    std::vector<double> out_a(n / t), out_b(n / t);
    const double ts = time_best_of(5, [&] { k::serial::block_average(values, t, out_a); });
    const double tp = time_best_of(5, [&] { k::block_average(values, t, out_b); });
    double diff = 0;
    for (std::size_t i = 0; i < out_a.size(); ++i) diff = std::max(diff, std::abs(out_a[i] - out_b[i]));
    print_row("block_average", n, ts, tp, diff);
  }
  {
    const std::size_t sample_n = std::min<std::size_t>(n, 200000);
    const std::span<const double> sample(values.data(), sample_n);
    std::vector<double> grid(512), out_a(512), out_b(512);
    for (std::size_t g = 0; g < grid.size(); ++g) grid[g] = 30.0 * static_cast<double>(g) / 511.0;
    const double ts = time_best_of(3, [&] { k::serial::kde_evaluate(sample, 0.8, grid, out_a); });
    const double tp = time_best_of(3, [&] { k::kde_evaluate(sample, 0.8, grid, out_b); });
    double diff = 0;
    for (std::size_t i = 0; i < out_a.size(); ++i) diff = std::max(diff, std::abs(out_a[i] - out_b[i]));
    print_row("kde_evaluate", sample_n, ts, tp, diff);
  }
  {
    double a = 0, b = 0;
    const double ts = time_best_of(5, [&] { a = k::serial::sum_exp_scaled(logs, 1.9, 2.1); });
    const double tp = time_best_of(5, [&] { b = k::sum_exp_scaled(logs, 1.9, 2.1); });
    print_row("sum_exp_scaled", n, ts, tp, std::abs(a - b));
  }
  return 0;
}
