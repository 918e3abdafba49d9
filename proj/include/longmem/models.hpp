#pragma once

#include <cstddef>

#include "longmem/series.hpp"

namespace longmem {

struct ARFit {
  std::vector<double> coeffs;   // a_1..a_p on lags 1..p
  double intercept = 0.0;
  bool has_intercept = false;
  int p = 0;
  double sigma2 = 0.0;          // RSS / n_rows (ML convention, no df correction)
  double aic = 0.0;             // n_rows * log(sigma2) + 2k, k = p + intercept
  std::size_t n_rows = 0;
  bool rank_deficient = false;  // minimum-norm solution was used
};

// OLS fit of an AR(p). Rows start after `context_order` conditioning values
// (default p), so fits with a common context_order are comparable on the
// same sample. A singular design falls back to the minimum-norm solution and
// sets rank_deficient instead of failing.
ARFit ar_fit(const Series& y, int p, bool with_intercept,
             int context_order = -1);

// Default AIC lag-search ceiling: 12 * floor((T/100)^{1/4}) as primary, or
// floor(12 * (T/100)^{1/4}) when common_variant is set. Both capped at
// floor(T/4), never negative.
int default_ar_pmax(std::size_t T, bool common_variant = false);

// AIC selection over p = 0..p_max: every candidate is fitted on the common
// sample conditioned on p_max lags; the winner (ties to the smaller p) is
// then refitted on its own maximal sample. p_max < 0 selects the default
// rule above.
ARFit ar_select_aic(const Series& y, int p_max, bool with_intercept);

// Iterated multi-step forecasts, feeding forecasts back in as lags.
Series ar_forecast(const ARFit& fit, const Series& history, std::size_t h);

// Heterogeneous autoregression on daily, weekly and monthly averages:
//   y_t = b0 + bd y_{t-1} + bw mean(y_{t-5..t-1}) + bm mean(y_{t-22..t-1}).
struct HARFit {
  double b0 = 0.0, bd = 0.0, bw = 0.0, bm = 0.0;
  double sigma2 = 0.0;
  std::size_t n_rows = 0;
  bool rank_deficient = false;
};

HARFit har_fit(const Series& y);              // needs T > 23
Series har_forecast(const HARFit& fit, const Series& history, std::size_t h);

// Additive innovations state-space exponential smoothing. Three candidates:
// level only (ANN), level+trend (AAN), damped trend (AAdN); Gaussian
// one-step likelihood, AICc selection.
enum class EtsKind { ann, aan, aadn };

struct ETSFit {
  EtsKind kind = EtsKind::ann;
  double alpha = 0.0, beta = 0.0, phi = 1.0;
  double level0 = 0.0, trend0 = 0.0;   // initial states
  double level = 0.0, trend = 0.0;     // states after the last observation
  double sigma2 = 0.0;
  double aicc = 0.0;
  int n_params = 0;                    // smoothing + initial states + variance
};

ETSFit ets_fit_select(const Series& y);
Series ets_forecast(const ETSFit& fit, std::size_t h);

}  // namespace longmem
