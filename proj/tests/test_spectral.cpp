#include "doctest.h"

#include <cmath>

#include "longmem/rng.hpp"
#include "longmem/spectral.hpp"

using namespace longmem;

namespace {

const Series kY16 = {0.677189, -0.293395, -0.061262, 1.841982,
                     0.13544,  1.807049,  -0.813389, 1.135102,
                     1.549632, 0.324963,  1.014663,  2.505258,
                     -0.357394, 0.685406, -0.659426, -1.570617};

}  // namespace

TEST_CASE("fourier frequencies exclude zero and Nyquist") {
  const auto f16 = fourier_frequencies(16);
  REQUIRE(f16.size() == 7);
  CHECK(f16[0] == doctest::Approx(2.0 * M_PI / 16.0).epsilon(1e-15));
  CHECK(f16[6] == doctest::Approx(14.0 * M_PI / 16.0).epsilon(1e-15));

  const auto f15 = fourier_frequencies(15);
  REQUIRE(f15.size() == 7);
  CHECK(f15.back() < M_PI);
}

TEST_CASE("periodogram ordinates of a fixed 16-point series") {
  const auto I = periodogram(kY16);
  REQUIRE(I.size() == 7);
  // |sum_t y_t e^{-i lambda_j t}|^2 / (2 pi T) at j = 1, 2, 3, 7
  CHECK(I[0] == doctest::Approx(0.2842613654707171).epsilon(1e-12));
  CHECK(I[1] == doctest::Approx(0.2356995962046011).epsilon(1e-12));
  CHECK(I[2] == doctest::Approx(0.0017608650589590856).epsilon(1e-12));
  CHECK(I[6] == doctest::Approx(0.0748909169849332).epsilon(1e-12));
}

TEST_CASE("periodogram sums to the sample variance (even T)") {
  const std::size_t T = kY16.size();
  const auto I = periodogram(kY16);
  double mean = 0.0;
  for (double v : kY16) mean += v;
  mean /= static_cast<double>(T);
  double var = 0.0;
  for (double v : kY16) var += (v - mean) * (v - mean);
  var /= static_cast<double>(T);

  double nyq = 0.0;  // sum_t (-1)^t y_t, t = 1..T
  for (std::size_t t = 1; t <= T; ++t)
    nyq += (t % 2 == 0 ? 1.0 : -1.0) * kY16[t - 1];

  double total = 0.0;
  for (double v : I) total += v;
  const double recon = (4.0 * M_PI / static_cast<double>(T)) * total +
                       nyq * nyq / (static_cast<double>(T) * static_cast<double>(T));
  CHECK(recon == doctest::Approx(var).epsilon(1e-13));
}

TEST_CASE("max_j truncates without changing values") {
  const auto full = periodogram(kY16);
  const auto head = periodogram(kY16, 3);
  REQUIRE(head.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(head[j] == full[j]);
}

TEST_CASE("table kernel agrees with the per-term reference") {
  for (std::size_t T : {64u, 255u, 1024u}) {
    const CounterRng rng(1000 + T);
    Series y(T);
    for (std::size_t t = 0; t < T; ++t) y[t] = rng.normal(t);
    const auto fast = periodogram(y);
    const auto ref = detail::periodogram_reference(y);
    REQUIRE(fast.size() == ref.size());
    for (std::size_t j = 0; j < fast.size(); ++j)
      CHECK(fast[j] == doctest::Approx(ref[j]).epsilon(1e-12));
  }
}

TEST_CASE("adding a constant leaves the periodogram unchanged") {
  const CounterRng rng(5);
  Series y(128), ys(128);
  for (std::size_t t = 0; t < y.size(); ++t) {
    y[t] = rng.normal(t);
    ys[t] = y[t] + 100.0;
  }
  const auto a = periodogram(y);
  const auto b = periodogram(ys);
  for (std::size_t j = 0; j < a.size(); ++j)
    CHECK(std::abs(b[j] - a[j]) <= 1e-6 * (1.0 + a[j]));
}

TEST_CASE("spectral shape: pure fractional and AR(1) factors") {
  const std::vector<double> freqs = {M_PI / 2.0, M_PI};

  // no memory, no AR: flat shape
  const auto flat = arfi_spectral_shape(0.0, {}, freqs);
  CHECK(flat[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat[1] == doctest::Approx(1.0).epsilon(1e-15));

  // |2 sin(pi/2)|^{-2d} = 2^{-0.8} at lambda = pi, d = 0.4
  const auto fi = arfi_spectral_shape(0.4, {}, freqs);
  CHECK(fi[1] == doctest::Approx(0.5743491774985175).epsilon(1e-14));

  // AR(1) with a = 0.5: 1/|1 - 0.5 e^{-i lambda}|^2 = 1/(1.25 - cos lambda)
  const auto ar = arfi_spectral_shape(0.0, {0.5}, freqs);
  CHECK(ar[0] == doctest::Approx(1.0 / 1.25).epsilon(1e-14));
  CHECK(ar[1] == doctest::Approx(1.0 / 2.25).epsilon(1e-14));
}

TEST_CASE("spectral shape rejects frequencies outside (0, pi]") {
  CHECK_THROWS_AS(arfi_spectral_shape(0.2, {}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(arfi_spectral_shape(0.2, {}, {3.2}), std::invalid_argument);
}
