#include "longmem/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace longmem {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<double> fourier_frequencies(std::size_t T) {
  if (T < 2) throw std::invalid_argument("fourier_frequencies: T must be >= 2");
  const std::size_t n = (T - 1) / 2;
  std::vector<double> out(n);
  for (std::size_t j = 1; j <= n; ++j)
    out[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(T);
  return out;
}

// One table of e^{-2 pi i m / T} indexed by m = (j t) mod T makes every term
// exact up to table rounding: the angle reduction happens in integers, so no
// precision is lost at large j*t and the result is identical for any thread
// count.
std::vector<double> periodogram(const Series& y, std::size_t max_j) {
  const std::size_t T = y.size();
  if (T < 2) throw std::invalid_argument("periodogram: need at least 2 observations");
  const std::size_t n_all = (T - 1) / 2;
  const std::size_t n = (max_j == 0 || max_j > n_all) ? n_all : max_j;

  std::vector<double> ctab(T), stab(T);
  for (std::size_t m = 0; m < T; ++m) {
    const double ang = kTwoPi * static_cast<double>(m) / static_cast<double>(T);
    ctab[m] = std::cos(ang);
    stab[m] = std::sin(ang);
  }

  std::vector<double> out(n);
  const double scale = 1.0 / (kTwoPi * static_cast<double>(T));
  const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < pn; ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj) + 1;
    std::size_t m = j % T;  // angle index for t = 1
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      re += y[t] * ctab[m];
      im += y[t] * stab[m];
      m += j;
      if (m >= T) m -= T;
    }
    out[jj] = (re * re + im * im) * scale;
  }
  return out;
}

std::vector<double> arfi_spectral_shape(double d, const std::vector<double>& ar,
                                        const std::vector<double>& freqs) {
  if (!std::isfinite(d)) throw std::invalid_argument("arfi_spectral_shape: d must be finite");
  std::vector<double> out(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double lam = freqs[i];
    if (!(lam > 0.0) || lam > std::numbers::pi + 1e-12)
      throw std::invalid_argument("arfi_spectral_shape: frequencies must lie in (0, pi]");
    const double s = 2.0 * std::sin(lam / 2.0);
    double g = std::pow(s, -2.0 * d);
    std::complex<double> A(1.0, 0.0);
    for (std::size_t k = 0; k < ar.size(); ++k) {
      const double kk = static_cast<double>(k + 1) * lam;
      A -= ar[k] * std::complex<double>(std::cos(kk), -std::sin(kk));
    }
    const double a2 = std::norm(A);
    out[i] = g / a2;
  }
  return out;
}

namespace detail {

std::vector<double> periodogram_reference(const Series& y, std::size_t max_j) {
  const std::size_t T = y.size();
  if (T < 2) throw std::invalid_argument("periodogram: need at least 2 observations");
  const std::size_t n_all = (T - 1) / 2;
  const std::size_t n = (max_j == 0 || max_j > n_all) ? n_all : max_j;
  std::vector<double> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
      // reduce j*t mod T in integers before the trig call
      const std::size_t m = (j * t) % T;
      const double ang = kTwoPi * static_cast<double>(m) / static_cast<double>(T);
      re += y[t - 1] * std::cos(ang);
      im += y[t - 1] * std::sin(ang);
    }
    out[j - 1] = (re * re + im * im) / (kTwoPi * static_cast<double>(T));
  }
  return out;
}

}  // namespace detail

}  // namespace longmem
