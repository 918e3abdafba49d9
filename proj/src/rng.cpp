#include "longmem/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace longmem {

namespace {

// 64-bit finalizer with full avalanche; value at index i of the stream
// seeded by `seed` (random access, no sequential state).
inline std::uint64_t mix_at(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed)
    : key_(mix_at(seed, 0x243F6A8885A308D3ull)) {}

std::uint64_t CounterRng::bits(std::uint64_t i) const { return mix_at(key_, i); }

double CounterRng::uniform(std::uint64_t i) const {
  // 53 random bits centered in (0,1): never exactly 0 or 1.
  return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t i) const {
  return normal_quantile(uniform(i));
}

// Rational minimax approximation to the normal quantile (Wichura's PPND16):
// three branches by distance from the median, each a degree-7 rational.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0,1)");

  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e+2,
      1.9715909503065514427e+3, 1.3731693765509461125e+4,
      4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e+1,
      6.8718700749205790830e+2, 5.3941960214247511077e+3,
      2.1213794301586595867e+4, 3.9307895800092710610e+4,
      2.8729085735721942674e+4, 5.2264952788528545610e+3};
  static const double c[8] = {
      1.42343711074968357734e0,    4.63033784615654529590e0,
      5.76949722146069140550e0,    3.64784832476320460504e0,
      1.27045825245236838258e0,    2.41780725177450611770e-1,
      2.27238449892691845833e-2,   7.74545014278341407640e-4};
  static const double dd[8] = {
      1.0,                         2.05319162663775882187e0,
      1.67638483018380384940e0,    6.89767334985100004550e-1,
      1.48103976427480074590e-1,   1.51986665636164571966e-2,
      5.47593808499534494600e-4,   1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0,    5.46378491116411436990e0,
      1.78482653991729133580e0,    2.96560571828504891230e-1,
      2.65321895265761230930e-2,   1.24266094738807843860e-3,
      2.71155556874348757815e-5,   2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                         5.99832206555887937690e-1,
      1.36929880922735805310e-1,   1.48753612908506148525e-2,
      7.86869131145613259100e-4,   1.84631831751005468180e-5,
      1.42151175831644588870e-7,   2.04426310338993978564e-15};

  auto ratpoly = [](const double* num, const double* den, double r) {
    double n = num[7], d = den[7];
    for (int k = 6; k >= 0; --k) {
      n = n * r + num[k];
      d = d * r + den[k];
    }
    return n / d;
  };

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * ratpoly(a, b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    val = ratpoly(c, dd, r - 1.6);
  } else {
    val = ratpoly(e, f, r - 5.0);
  }
  return q < 0.0 ? -val : val;
}

}  // namespace longmem
