#include "longmem/meanest.hpp"

#include <cmath>
#include <numbers>

#include "longmem/fracdiff.hpp"

namespace longmem {

namespace {
constexpr double kPi = std::numbers::pi;
}

MeanEstimate arithmetic_mean(const Series& y) {
  if (y.empty()) throw insufficient_data("arithmetic_mean: empty series");
  double s = 0.0;
  for (double v : y) s += v;
  return {s / static_cast<double>(y.size()), 0.0, MuMethod::arithmetic};
}

MeanEstimate robinson_mean(const Series& y, double d) {
  if (y.empty()) throw insufficient_data("robinson_mean: empty series");
  if (!std::isfinite(d)) throw std::invalid_argument("robinson_mean: d must be finite");
  const Series u = frac_diff(y, d);
  const Series r = r_sequence(d, y.size());
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    num += r[t] * u[t];
    den += r[t] * r[t];
  }
  // den >= r_1^2 = 1, the weighting can never degenerate
  return {num / den, d, MuMethod::robinson};
}

double shimotsu_weight(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("shimotsu_weight: d must be finite");
  if (d <= 0.5) return 1.0;
  if (d >= 0.75) return 0.0;
  return (1.0 + std::cos(4.0 * kPi * d)) / 2.0;
}

MeanEstimate shimotsu_mean(const Series& y, double d) {
  if (y.empty()) throw insufficient_data("shimotsu_mean: empty series");
  const double v = shimotsu_weight(d);
  const double ybar = arithmetic_mean(y).mu_hat;
  return {v * ybar + (1.0 - v) * y.front(), d, MuMethod::shimotsu};
}

double reff(double d) {
  if (!(d >= 0.0 && d <= 0.5))
    throw std::invalid_argument("reff: d must lie in [0, 1/2]");
  if (d == 0.0) return 1.0;   // limit: both estimators coincide
  if (d == 0.5) return 0.0;   // limit: mean efficiency vanishes
  const double s = std::sin(kPi * d);
  return (1.0 - 4.0 * d * d) * (kPi * d) * (kPi * d) / (s * s);
}

double prop1_limit(double d, double omega2) {
  if (!(d > 0.0 && d < 0.5))
    throw std::invalid_argument("prop1_limit: d must lie in (0, 1/2)");
  if (!(omega2 > 0.0)) throw std::invalid_argument("prop1_limit: omega2 must be > 0");
  const double g = std::tgamma(d + 1.0);
  const double s = std::sin(kPi * d);
  return omega2 * (1.0 - 2.0 * d) * (kPi * d) * (kPi * d) / (g * g * s * s);
}

double tanaka_limit(double d, double omega2) {
  if (!(d > -0.5)) throw std::invalid_argument("tanaka_limit: d must be > -1/2");
  if (!(omega2 > 0.0)) throw std::invalid_argument("tanaka_limit: omega2 must be > 0");
  const double g = std::tgamma(1.0 + d);
  return omega2 / (g * g * (2.0 * d + 1.0));
}

double mu_hat_variance_exact(double d, const std::vector<double>& acf,
                             std::size_t T) {
  if (T == 0) throw std::invalid_argument("mu_hat_variance_exact: T must be >= 1");
  if (acf.empty() || !(acf[0] > 0.0))
    throw std::invalid_argument("mu_hat_variance_exact: need acf[0] > 0");
  const Series r = r_sequence(d, T);
  double S = 0.0;
  for (double v : r) S += v * v;
  double acc = acf[0] * S;
  const std::size_t hmax = std::min(acf.size() - 1, T - 1);
  for (std::size_t h = 1; h <= hmax; ++h) {
    double cross = 0.0;
    for (std::size_t t = 0; t + h < T; ++t) cross += r[t] * r[t + h];
    acc += 2.0 * acf[h] * cross;
  }
  return acc / (S * S);
}

}  // namespace longmem
