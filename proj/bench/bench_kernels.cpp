// Timing comparison between the parallel kernels and the serial reference
// implementations they are tested against. Output deviations are printed so
// a speedup can never hide a wrong result.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "longmem/fracdiff.hpp"
#include "longmem/mc.hpp"
#include "longmem/memest.hpp"
#include "longmem/rng.hpp"
#include "longmem/series.hpp"
#include "longmem/spectral.hpp"

using namespace longmem;

namespace {

Series random_series(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed);
  Series y(n);
  for (std::size_t t = 0; t < n; ++t) y[t] = rng.normal(t);
  return y;
}

// median-of-5 wall time in milliseconds
template <typename F>
double time_ms(F&& f) {
  std::vector<double> runs;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    runs.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count());
  }
  std::sort(runs.begin(), runs.end());
  return runs[2];
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void row(const char* name, std::size_t n, double serial_ms, double parallel_ms, double dev) {
  std::printf("%-24s %8zu %11.2f ms %11.2f ms %7.2fx   %.2e\n", name, n, serial_ms,
              parallel_ms, serial_ms / parallel_ms, dev);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", max_threads());
  std::printf("%-24s %8s %14s %14s %8s   %s\n", "kernel", "n", "serial", "parallel",
              "speedup", "max|diff|");

  for (std::size_t T : {std::size_t{2000}, std::size_t{8000}, std::size_t{20000}}) {
    const Series y = random_series(T, 11);
    const double d = 0.37;
    std::vector<double> ref, par;
    const double ts = time_ms([&] { ref = detail::frac_filter_reference(y, d); });
    const double tp = time_ms([&] { par = frac_diff(y, d); });
    row("fractional filter", T, ts, tp, max_abs_diff(ref, par));
  }

  for (std::size_t T : {std::size_t{4096}, std::size_t{16384}}) {
    const Series y = random_series(T, 12);
    std::vector<double> ref, par;
    const double ts = time_ms([&] { ref = detail::periodogram_reference(y); });
    const double tp = time_ms([&] { par = periodogram(y); });
    row("periodogram", T, ts, tp, max_abs_diff(ref, par));
  }

  {
    // replication-parallel study block; cells are reduced by a deterministic
    // fold, so the two results must agree bit for bit
    DEstimatorSpec lw;
    lw.method = DMethod::lw;
    lw.alpha = 0.65;
    lw.label = "LW(T^0.65)";
    StudyReport r1, rn;
    set_threads(1);
    const double ts =
        time_ms([&] { r1 = mc_d_study({0.3}, {Innovation::iid}, {512}, {lw}, 64, 77); });
    set_threads(max_threads());
    const double tp =
        time_ms([&] { rn = mc_d_study({0.3}, {Innovation::iid}, {512}, {lw}, 64, 77); });
    row("mc replication block", 64, ts, tp,
        std::abs(r1.cells.at(0).mse - rn.cells.at(0).mse));
  }

  return 0;
}
