#include "doctest.h"

#include <cmath>

#include "longmem/fracdiff.hpp"
#include "longmem/rng.hpp"

using namespace longmem;

TEST_CASE("pi coefficients match the ratio recursion") {
  // (1-L)^{-1/2} expands to 1 + L/2 + 3L^2/8 + 5L^3/16 + ...
  const Series a = pi_coeffs(-0.5, 4);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(a[3] == doctest::Approx(0.3125).epsilon(1e-15));

  const Series b = pi_coeffs(0.5, 3);
  CHECK(b[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(-0.125).epsilon(1e-15));

  const Series c = pi_coeffs(-0.4, 3);
  CHECK(c[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(0.28).epsilon(1e-15));
}

TEST_CASE("integer orders terminate in exact zeros") {
  const Series d1 = pi_coeffs(1.0, 5);
  CHECK(d1[0] == 1.0);
  CHECK(d1[1] == -1.0);
  CHECK(d1[2] == 0.0);
  CHECK(d1[4] == 0.0);

  const Series d2 = pi_coeffs(2.0, 5);
  CHECK(d2[1] == -2.0);
  CHECK(d2[2] == 1.0);
  CHECK(d2[3] == 0.0);

  const Series d0 = pi_coeffs(0.0, 4);
  CHECK(d0[0] == 1.0);
  CHECK(d0[1] == 0.0);
  CHECK(d0[3] == 0.0);
}

TEST_CASE("cached coefficients are bitwise identical to fresh ones") {
  const double d = 0.3721;
  const auto small = pi_coeffs_cached(d, 8);
  REQUIRE(small->size() >= 8);
  const auto big = pi_coeffs_cached(d, 500);  // forces the cache to grow
  REQUIRE(big->size() >= 500);
  const Series fresh = pi_coeffs(d, 500);
  for (std::size_t j = 0; j < 8; ++j) CHECK((*small)[j] == fresh[j]);
  for (std::size_t j = 0; j < 500; ++j) CHECK((*big)[j] == fresh[j]);
}

TEST_CASE("d = 0 filter is the identity, d = 1 first-differences") {
  const Series y = {1.5, -0.25, 3.0, 2.0, -1.0};
  const Series id = frac_diff(y, 0.0);
  for (std::size_t t = 0; t < y.size(); ++t) CHECK(id[t] == y[t]);

  const Series dy = frac_diff(y, 1.0);
  CHECK(dy[0] == y[0]);  // pre-sample values are zero by construction
  for (std::size_t t = 1; t < y.size(); ++t)
    CHECK(dy[t] == doctest::Approx(y[t] - y[t - 1]).epsilon(1e-15));
}

TEST_CASE("difference and integrate are exact inverses on the sample") {
  const CounterRng rng(911);
  Series y(180);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = rng.normal(t);

  for (double d : {-0.9, -0.45, 0.1, 0.3, 0.45, 0.7, 1.0, 1.4}) {
    const Series back = frac_diff(frac_integrate(y, d), d);
    const Series forth = frac_integrate(frac_diff(y, d), d);
    for (std::size_t t = 0; t < y.size(); ++t) {
      CHECK(std::abs(back[t] - y[t]) <= 1e-10);
      CHECK(std::abs(forth[t] - y[t]) <= 1e-10);
    }
  }
}

TEST_CASE("r_t partial sums equal the shifted order-(d-1) coefficients") {
  for (double d : {0.1, 0.3, 0.45, 0.7, 0.9}) {
    const std::size_t T = 2000;
    const Series r = r_sequence(d, T);
    const Series pim = pi_coeffs(d - 1.0, T);
    CHECK(r[0] == 1.0);
    for (std::size_t t = 0; t < T; ++t) {
      const double ref = pim[t];
      CHECK(std::abs(r[t] - ref) <= 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("filtering a constant reproduces r_t") {
  const double d = 0.42;
  const std::size_t T = 64;
  const Series ones(T, 1.0);
  const Series filtered = frac_diff(ones, d);
  const Series r = r_sequence(d, T);
  for (std::size_t t = 0; t < T; ++t)
    CHECK(filtered[t] == doctest::Approx(r[t]).epsilon(1e-13));
}

TEST_CASE("parallel kernel agrees bitwise with the serial reference") {
  const CounterRng rng(4242);
  Series y(257);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = rng.normal(t);

  for (double d : {-0.6, 0.37, 1.2}) {
    const Series fast = frac_diff(y, d);
    const Series ref = detail::frac_filter_reference(y, d);
    REQUIRE(fast.size() == ref.size());
    for (std::size_t t = 0; t < y.size(); ++t) CHECK(fast[t] == ref[t]);
  }
}

TEST_CASE("filters are linear in the input") {
  const CounterRng rng(7);
  Series y(50);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = rng.normal(t);
  Series y2 = y;
  for (double& v : y2) v *= -3.5;

  const Series a = frac_diff(y, 0.3);
  const Series b = frac_diff(y2, 0.3);
  for (std::size_t t = 0; t < y.size(); ++t)
    CHECK(b[t] == doctest::Approx(-3.5 * a[t]).epsilon(1e-13));
}
