#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "longmem/fipipe.hpp"
#include "longmem/memest.hpp"
#include "longmem/series.hpp"

namespace longmem {

enum class Innovation { iid, ar1, ma9 };

Innovation innovation_from_string(const std::string& s);
std::string to_string(Innovation v);

// Data-generating process: y = fractional integral (order d) of short-memory
// innovations x, mean 0.
//   iid:  x_t = e_t
//   ar1:  x_t = 0.5 x_{t-1} + e_t, x_1 = e_1 / sqrt(1 - 0.25)
//   ma9:  x_t = sum_{k=0}^{9} c_k e_{t-k}, c = (1, 0.9, ..., 0.1), with nine
//         pre-sample draws so x_1 is already stationary.
// e ~ N(0,1) from a counter-based stream keyed by `seed`: replications are
// reproducible independently of evaluation order and thread count.
struct DgpSpec {
  double d = 0.0;
  Innovation innov = Innovation::iid;
  std::size_t T = 0;
  std::uint64_t seed = 0;
};

Series simulate_fi(const DgpSpec& spec);

// Autocovariances of the innovation process at lags 0..max_lag.
std::vector<double> innovation_acf(Innovation v, std::size_t max_lag);

// Long-run variance omega^2 of the innovation process.
double innovation_lrv(Innovation v);

// One cell of a simulation study: grid coordinates plus the estimate.
struct StudyCell {
  std::string block;        // row grouping: estimator or forecast method
  double d = 0.0;
  Innovation innov = Innovation::iid;
  std::size_t T = 0;
  std::size_t h = 0;        // 0 when horizons play no role
  double mse = 0.0;
  double rel_mse = 0.0;     // vs the baseline method (forecast study)
  bool has_rel = false;
  std::size_t reps_used = 0;
  std::size_t failures = 0;
};

struct StudyReport {
  std::string study;        // "d" | "mean" | "forecast"
  std::uint64_t seed_base = 0;
  std::size_t replications = 0;
  std::vector<StudyCell> cells;
};

// Estimator roster entry for the d study.
struct DEstimatorSpec {
  DMethod method = DMethod::lw;
  double alpha = 0.65;      // lw bandwidth exponent
  int p = 0;                // whittle_fixed order
  DInterval interval{};     // search interval
  std::string label;
};

// MSE of each estimator's d_hat over `reps` replications per grid cell.
// Replication r of a cell uses seed seed_base + r, so every estimator sees
// the same series (common random numbers). Failures are counted and excluded
// cell-locally. Replications run in parallel; results are identical for any
// thread count.
StudyReport mc_d_study(const std::vector<double>& ds,
                       const std::vector<Innovation>& innovs,
                       const std::vector<std::size_t>& Ts,
                       const std::vector<DEstimatorSpec>& estimators,
                       std::size_t reps, std::uint64_t seed_base);

// MSE of the three location estimators (sample mean, shimotsu_mean,
// robinson_mean), the latter two at d_hat from local Whittle with
// m = floor(T^lw_alpha). True mean is 0. A failed d estimate drops the
// replication for all three.
StudyReport mc_mean_study(const std::vector<double>& ds,
                          const std::vector<Innovation>& innovs,
                          const std::vector<std::size_t>& Ts, double lw_alpha,
                          std::size_t reps, std::uint64_t seed_base);

// Forecast comparison: simulate T+h, fit every method on the first T values,
// record the squared error at horizon h. rel_mse is against FI(0.5) when it
// is on the roster. A method failure drops that replication for all methods
// so the ratios stay paired.
StudyReport mc_forecast_study(const std::vector<double>& ds,
                              const std::vector<Innovation>& innovs,
                              const std::vector<std::size_t>& Ts,
                              const std::vector<std::size_t>& hs,
                              const std::vector<ForecastMethodSpec>& methods,
                              std::size_t reps, std::uint64_t seed_base,
                              const LagRule& rule = {});

}  // namespace longmem
