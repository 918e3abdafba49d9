#pragma once

#include <cstddef>
#include <string>

#include "longmem/series.hpp"

namespace longmem {

enum class MethodKind {
  fi_fixed,   // fractional pipeline at a fixed d (d = 1 gives the unit-root special case)
  fi_lw,      // fractional pipeline at d estimated by local Whittle, m = floor(T^alpha)
  lar,        // AR with intercept, AIC lag selection
  ar1,        // AR(1) with intercept
  ets,        // exponential smoothing (ANN/AAN/AAdN by AICc)
  har,        // heterogeneous AR
  mean_only,  // sample mean at every horizon
  naive       // last value at every horizon
};

// Switches the AIC lag ceiling between the primary rule
// 12*floor((T/100)^{1/4}) and the variant floor(12*(T/100)^{1/4}).
struct LagRule {
  bool common_variant = false;
};

struct ForecastMethodSpec {
  MethodKind kind = MethodKind::fi_fixed;
  double d = 0.5;        // fi_fixed
  double alpha = 0.65;   // fi_lw

  // Accepts canonical labels ("FI(0.5)", "FI(T^0.65)", "FI(1)", "LAR", "AR1",
  // "ES", "HAR", "MEAN", "NAIVE") plus shell-friendly aliases ("fi-0.5",
  // "fi-t0.65", "ets", "rw"). Case-insensitive. Unknown -> invalid_argument.
  static ForecastMethodSpec parse(const std::string& name);
  std::string label() const;
};

struct ForecastResult {
  Series forecasts;                // h values for horizons 1..h
  std::string method_label;
  double d_used = 0.0;             // fractional methods
  double mu_hat = 0.0;             // fractional methods
  int ar_order = -1;               // selected AR order where applicable
  std::vector<double> ar_coeffs;
  bool rank_deficient = false;
};

// Fractional-integration forecast pipeline at memory parameter d:
//   1. mu_hat from robinson_mean(y, d);
//   2. residuals xi_t = (frac_diff(y,d))_t - r_t mu_hat;
//   3. AR on xi by AIC (no intercept, ceiling from the lag rule);
//   4. iterate the AR h steps ahead;
//   5. recolor: fractionally integrate (xi_1..xi_T, xi_hat_{T+1..T+h}) and
//      add mu_hat; the last h entries are the forecasts.
// Equivalent to the direct recursion
//   y_hat_{T+k} = -sum_{j=1}^{T+k-1} pi_j(d) y_hat_{T+k-j} + r_{T+k} mu_hat + xi_hat_{T+k}.
ForecastResult fi_forecast(const Series& y, double d, std::size_t h,
                           const LagRule& rule = {});

// Runs any roster method on an estimation window.
ForecastResult forecast_dispatch(const ForecastMethodSpec& spec,
                                 const Series& window, std::size_t h,
                                 const LagRule& rule = {});

}  // namespace longmem
