#include "longmem/mc.hpp"

#include <algorithm>
#include <cmath>

#include "longmem/fracdiff.hpp"
#include "longmem/meanest.hpp"
#include "longmem/rng.hpp"

namespace longmem {

namespace {
// MA(9) impulse response (1, 0.9, ..., 0.1).
constexpr double kMa9[10] = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
}

Innovation innovation_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "iid" || t == "wn") return Innovation::iid;
  if (t == "ar1" || t == "ar(1)") return Innovation::ar1;
  if (t == "ma9" || t == "ma(9)") return Innovation::ma9;
  throw std::invalid_argument("unknown innovation: " + s);
}

std::string to_string(Innovation v) {
  switch (v) {
    case Innovation::iid: return "iid";
    case Innovation::ar1: return "ar1";
    case Innovation::ma9: return "ma9";
  }
  return "?";
}

Series simulate_fi(const DgpSpec& spec) {
  if (spec.T == 0) throw std::invalid_argument("simulate_fi: T must be >= 1");
  if (!std::isfinite(spec.d)) throw std::invalid_argument("simulate_fi: d must be finite");
  const CounterRng rng(spec.seed);
  const std::size_t T = spec.T;
  Series x(T);

  switch (spec.innov) {
    case Innovation::iid:
      for (std::size_t t = 0; t < T; ++t) x[t] = rng.normal(t);
      break;
    case Innovation::ar1: {
      // stationary start: x_1 has the marginal variance 1/(1 - 0.25)
      x[0] = rng.normal(0) / std::sqrt(1.0 - 0.25);
      for (std::size_t t = 1; t < T; ++t) x[t] = 0.5 * x[t - 1] + rng.normal(t);
      break;
    }
    case Innovation::ma9: {
      // counters 0..8 hold the nine pre-sample shocks, counter 9 is e_1
      for (std::size_t t = 0; t < T; ++t) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= 9; ++k)
          acc += kMa9[k] * rng.normal(t + 9 - k);
        x[t] = acc;
      }
      break;
    }
  }
  return frac_integrate(x, spec.d);
}

std::vector<double> innovation_acf(Innovation v, std::size_t max_lag) {
  std::vector<double> g(max_lag + 1, 0.0);
  switch (v) {
    case Innovation::iid:
      g[0] = 1.0;
      break;
    case Innovation::ar1:
      for (std::size_t h = 0; h <= max_lag; ++h)
        g[h] = std::pow(0.5, static_cast<double>(h)) / (1.0 - 0.25);
      break;
    case Innovation::ma9:
      for (std::size_t h = 0; h <= max_lag && h <= 9; ++h) {
        double s = 0.0;
        for (std::size_t k = 0; k + h <= 9; ++k) s += kMa9[k] * kMa9[k + h];
        g[h] = s;
      }
      break;
  }
  return g;
}

double innovation_lrv(Innovation v) {
  switch (v) {
    case Innovation::iid: return 1.0;
    case Innovation::ar1: return 1.0 / ((1.0 - 0.5) * (1.0 - 0.5));
    case Innovation::ma9: {
      double s = 0.0;
      for (double c : kMa9) s += c;
      return s * s;
    }
  }
  return 1.0;
}

namespace {

// Mean of squared errors with failures excluded; slots with NaN mark failed
// replications.
struct CellAccumulator {
  double sum = 0.0;
  std::size_t used = 0;
  std::size_t failed = 0;
  void add(double sq) {
    if (std::isnan(sq)) {
      ++failed;
    } else {
      sum += sq;
      ++used;
    }
  }
  double mse() const { return used > 0 ? sum / static_cast<double>(used) : 0.0; }
};

}  // namespace

StudyReport mc_d_study(const std::vector<double>& ds,
                       const std::vector<Innovation>& innovs,
                       const std::vector<std::size_t>& Ts,
                       const std::vector<DEstimatorSpec>& estimators,
                       std::size_t reps, std::uint64_t seed_base) {
  if (reps == 0) throw std::invalid_argument("mc_d_study: reps must be >= 1");
  if (estimators.empty()) throw std::invalid_argument("mc_d_study: empty estimator roster");

  StudyReport report;
  report.study = "d";
  report.seed_base = seed_base;
  report.replications = reps;

  const std::ptrdiff_t preps = static_cast<std::ptrdiff_t>(reps);
  for (double d : ds) {
    for (Innovation innov : innovs) {
      for (std::size_t T : Ts) {
        const std::size_t ne = estimators.size();
        // one slot per (replication, estimator); NaN = failure
        std::vector<double> sq(reps * ne);

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < preps; ++r) {
          const DgpSpec dgp{d, innov, T,
                            seed_base + static_cast<std::uint64_t>(r)};
          const Series y = simulate_fi(dgp);
          for (std::size_t e = 0; e < ne; ++e) {
            const DEstimatorSpec& es = estimators[e];
            double val;
            try {
              MemoryEstimate m;
              switch (es.method) {
                case DMethod::lw:
                  m = local_whittle(y, lw_bandwidth(T, es.alpha), es.interval);
                  break;
                case DMethod::whittle_fixed:
                  m = whittle_arfi(y, es.p, es.interval);
                  break;
                case DMethod::whittle_aic:
                  m = whittle_aic(y, -1, es.interval);
                  break;
                case DMethod::gsw:
                  m = gsw(y, es.interval);
                  break;
              }
              const double err = m.d_hat - d;
              val = err * err;
            } catch (const error&) {
              val = std::numeric_limits<double>::quiet_NaN();
            }
            sq[static_cast<std::size_t>(r) * ne + e] = val;
          }
        }

        for (std::size_t e = 0; e < ne; ++e) {
          CellAccumulator acc;
          for (std::size_t r = 0; r < reps; ++r) acc.add(sq[r * ne + e]);
          StudyCell cell;
          cell.block = estimators[e].label.empty() ? to_string(estimators[e].method)
                                                   : estimators[e].label;
          cell.d = d;
          cell.innov = innov;
          cell.T = T;
          cell.mse = acc.mse();
          cell.reps_used = acc.used;
          cell.failures = acc.failed;
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return report;
}

StudyReport mc_mean_study(const std::vector<double>& ds,
                          const std::vector<Innovation>& innovs,
                          const std::vector<std::size_t>& Ts, double lw_alpha,
                          std::size_t reps, std::uint64_t seed_base) {
  if (reps == 0) throw std::invalid_argument("mc_mean_study: reps must be >= 1");

  StudyReport report;
  report.study = "mean";
  report.seed_base = seed_base;
  report.replications = reps;

  const char* names[3] = {"ybar", "shimotsu", "robinson"};
  const std::ptrdiff_t preps = static_cast<std::ptrdiff_t>(reps);

  for (double d : ds) {
    for (Innovation innov : innovs) {
      for (std::size_t T : Ts) {
        std::vector<double> sq(reps * 3);

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < preps; ++r) {
          const DgpSpec dgp{d, innov, T,
                            seed_base + static_cast<std::uint64_t>(r)};
          const Series y = simulate_fi(dgp);
          double v0, v1, v2;
          try {
            const MemoryEstimate est =
                local_whittle(y, lw_bandwidth(T, lw_alpha));
            const double m0 = arithmetic_mean(y).mu_hat;
            const double m1 = shimotsu_mean(y, est.d_hat).mu_hat;
            const double m2 = robinson_mean(y, est.d_hat).mu_hat;
            v0 = m0 * m0;  // true mean is 0
            v1 = m1 * m1;
            v2 = m2 * m2;
          } catch (const error&) {
            v0 = v1 = v2 = std::numeric_limits<double>::quiet_NaN();
          }
          sq[static_cast<std::size_t>(r) * 3 + 0] = v0;
          sq[static_cast<std::size_t>(r) * 3 + 1] = v1;
          sq[static_cast<std::size_t>(r) * 3 + 2] = v2;
        }

        for (std::size_t e = 0; e < 3; ++e) {
          CellAccumulator acc;
          for (std::size_t r = 0; r < reps; ++r) acc.add(sq[r * 3 + e]);
          StudyCell cell;
          cell.block = names[e];
          cell.d = d;
          cell.innov = innov;
          cell.T = T;
          cell.mse = acc.mse();
          cell.reps_used = acc.used;
          cell.failures = acc.failed;
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return report;
}

StudyReport mc_forecast_study(const std::vector<double>& ds,
                              const std::vector<Innovation>& innovs,
                              const std::vector<std::size_t>& Ts,
                              const std::vector<std::size_t>& hs,
                              const std::vector<ForecastMethodSpec>& methods,
                              std::size_t reps, std::uint64_t seed_base,
                              const LagRule& rule) {
  if (reps == 0) throw std::invalid_argument("mc_forecast_study: reps must be >= 1");
  if (methods.empty()) throw std::invalid_argument("mc_forecast_study: empty roster");

  StudyReport report;
  report.study = "forecast";
  report.seed_base = seed_base;
  report.replications = reps;

  // ratios are taken against the fixed-0.5 pipeline when present
  int baseline = -1;
  for (std::size_t i = 0; i < methods.size(); ++i)
    if (methods[i].label() == "FI(0.5)") baseline = static_cast<int>(i);

  const std::size_t nm = methods.size();
  const std::ptrdiff_t preps = static_cast<std::ptrdiff_t>(reps);

  for (double d : ds) {
    for (Innovation innov : innovs) {
      for (std::size_t T : Ts) {
        for (std::size_t h : hs) {
          std::vector<double> sq(reps * nm);

#pragma omp parallel for schedule(static)
          for (std::ptrdiff_t r = 0; r < preps; ++r) {
            const DgpSpec dgp{d, innov, T + h,
                              seed_base + static_cast<std::uint64_t>(r)};
            const Series path = simulate_fi(dgp);
            const Series window(path.begin(),
                                path.begin() + static_cast<std::ptrdiff_t>(T));
            const double target = path[T + h - 1];
            bool any_failed = false;
            std::vector<double> errs(nm, std::numeric_limits<double>::quiet_NaN());
            for (std::size_t mi = 0; mi < nm; ++mi) {
              try {
                const ForecastResult f =
                    forecast_dispatch(methods[mi], window, h, rule);
                const double e = f.forecasts[h - 1] - target;
                errs[mi] = e * e;
              } catch (const error&) {
                any_failed = true;
              }
            }
            // paired design: one failure voids the replication for everyone
            if (any_failed)
              std::fill(errs.begin(), errs.end(),
                        std::numeric_limits<double>::quiet_NaN());
            for (std::size_t mi = 0; mi < nm; ++mi)
              sq[static_cast<std::size_t>(r) * nm + mi] = errs[mi];
          }

          std::vector<CellAccumulator> accs(nm);
          for (std::size_t r = 0; r < reps; ++r)
            for (std::size_t mi = 0; mi < nm; ++mi) accs[mi].add(sq[r * nm + mi]);

          const double base_mse = baseline >= 0 ? accs[baseline].mse() : 0.0;
          for (std::size_t mi = 0; mi < nm; ++mi) {
            StudyCell cell;
            cell.block = methods[mi].label();
            cell.d = d;
            cell.innov = innov;
            cell.T = T;
            cell.h = h;
            cell.mse = accs[mi].mse();
            if (baseline >= 0 && base_mse > 0.0) {
              cell.rel_mse = cell.mse / base_mse;
              cell.has_rel = true;
            }
            cell.reps_used = accs[mi].used;
            cell.failures = accs[mi].failed;
            report.cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace longmem
