#pragma once

#include <cstddef>

#include "longmem/series.hpp"

namespace longmem {

enum class MuMethod { arithmetic, robinson, shimotsu };

struct MeanEstimate {
  double mu_hat = 0.0;
  double d_used = 0.0;
  MuMethod method = MuMethod::arithmetic;
};

MeanEstimate arithmetic_mean(const Series& y);

// GLS-style location estimate for a fractionally integrated series: regress
// the d-differenced data on the deterministic response r_t,
//   mu_hat = sum_t r_t (frac_diff(y,d))_t / sum_t r_t^2.
// At d = 0 this is the sample mean, at d = 1 the first observation.
MeanEstimate robinson_mean(const Series& y, double d);

// Weight of the sample mean in the convex combination below:
//   v(d) = 1 for d <= 1/2, (1 + cos(4 pi d))/2 on (1/2, 3/4), 0 for d >= 3/4.
double shimotsu_weight(double d);

// mu_tilde = v(d) * mean(y) + (1 - v(d)) * y_1.
MeanEstimate shimotsu_mean(const Series& y, double d);

// Asymptotic efficiency of the sample mean relative to robinson_mean under
// long memory: REff(d) = (1 - 4 d^2) (pi d)^2 / sin^2(pi d), d in [0, 1/2]
// (1 at d = 0 and 0 at d = 1/2 by continuity).
double reff(double d);

// Limit of T^{1-2d} var(mu_hat) for robinson_mean, 0 < d < 1/2, where omega2
// is the long-run variance of the innovations:
//   omega2 (1-2d) (pi d)^2 / (Gamma(d+1)^2 sin^2(pi d)).
double prop1_limit(double d, double omega2);

// Limit of T^{1-2d} var(mean(y)) for the sample mean, d > -1/2:
//   omega2 / (Gamma(1+d)^2 (2d+1)).
double tanaka_limit(double d, double omega2);

// Exact finite-T variance of robinson_mean(y, d) when the d-differenced data
// have autocovariances acf[0..]: lags beyond acf.size()-1 are treated as 0.
//   var = [ acf[0] sum r_t^2 + 2 sum_h acf[h] sum_t r_t r_{t+h} ] / (sum r_t^2)^2.
double mu_hat_variance_exact(double d, const std::vector<double>& acf,
                             std::size_t T);

}  // namespace longmem
