#pragma once

#include <cstddef>
#include <string>

#include "longmem/series.hpp"

namespace longmem {

enum class DMethod { lw, whittle_fixed, whittle_aic, gsw };

// Search interval for the memory parameter. The default covers stationary
// long memory, overdifferenced series and near-unit-root data alike.
struct DInterval {
  double lo = -0.5;
  double hi = 1.5;
};

struct MemoryEstimate {
  double d_hat = 0.0;
  DMethod method = DMethod::lw;
  std::size_t bandwidth_m = 0;        // local Whittle only
  int ar_order_p = -1;                // parametric variants
  std::vector<double> ar_coeffs;      // fitted short-memory AR part
  double objective = 0.0;             // criterion value at the optimum
  double approx_variance = 0.0;       // large-sample variance proxy, > 0
  double sigma2 = 0.0;                // Whittle innovation variance estimate
};

// Bandwidth rule m = floor(T^alpha), clamped to [2, floor((T-1)/2)].
// Requires alpha in (0,1).
std::size_t lw_bandwidth(std::size_t T, double alpha);

// Semiparametric local Whittle estimator using the first m periodogram
// ordinates. Minimizes
//   R(d) = log( m^{-1} sum_j lambda_j^{2d} I_j ) - 2d m^{-1} sum_j log lambda_j.
// approx_variance = 1/(4m).
MemoryEstimate local_whittle(const Series& y, std::size_t m, DInterval iv = {});

// Parametric Whittle fit of an ARFI(p,d) shape over ALL Fourier frequencies,
// with the innovation variance concentrated out:
//   Q(d,a) = log( n^{-1} sum_j I_j/g_j ) + n^{-1} sum_j log g_j.
// d is profiled by scalar search; for each probed d the AR block is fitted by
// Nelder-Mead started from the Yule-Walker solution implied by the
// d-whitened periodogram. sigma2 = (2 pi / n) sum_j I_j / g_j.
MemoryEstimate whittle_arfi(const Series& y, int p, DInterval iv = {});

// Parametric Whittle with the AR order fixed by the sample-size rule
// p = floor(ln T); approx_variance = p/T.
MemoryEstimate gsw(const Series& y, DInterval iv = {});

// Parametric Whittle with p = 0..p_max compared by
//   AIC(p) = 2 n Q(d_p, a_p) + 2 (p+1),
// ties resolved toward the smaller order. p_max < 0 selects floor(ln T).
MemoryEstimate whittle_aic(const Series& y, int p_max = -1, DInterval iv = {});

std::string to_string(DMethod m);

}  // namespace longmem
