#include "doctest.h"

#include <cmath>

#include "longmem/models.hpp"
#include "longmem/rng.hpp"

using namespace longmem;

namespace {

const Series kZ12 = {0.2, -0.5, 1.3, 0.7, -0.4, 0.9, 1.8, -1.2, 0.3, 0.66, -0.31, 1.12};

const Series kW30 = {0.419807, 0.367564, 0.475164, 0.542045, 0.613605, 0.510971,
                     0.444735, 0.421522, 0.574875, 0.663478, 0.527277, 0.376667,
                     0.404173, 0.660002, 0.520288, 0.326787, 0.49163,  0.383677,
                     0.437071, 0.451199, 0.428669, 0.555338, 0.493691, 0.441057,
                     0.540964, 0.582986, 0.335698, 0.474327, 0.401925, 0.482684};

Series ar2_sample(std::size_t T, std::uint64_t seed) {
  const CounterRng rng(seed);
  Series y(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const double a = t >= 1 ? 0.6 * y[t - 1] : 0.0;
    const double b = t >= 2 ? -0.3 * y[t - 2] : 0.0;
    y[t] = a + b + rng.normal(t);
  }
  return y;
}

}  // namespace

TEST_CASE("ar(2) least squares without intercept") {
  const ARFit fit = ar_fit(kZ12, 2, false);
  REQUIRE(fit.coeffs.size() == 2);
  CHECK(fit.coeffs[0] == doctest::Approx(-0.21889242167703479).epsilon(1e-10));
  CHECK(fit.coeffs[1] == doctest::Approx(-0.19539606642654955).epsilon(1e-10));
  CHECK(fit.sigma2 == doctest::Approx(0.90776936926101492).epsilon(1e-10));
  CHECK(fit.aic == doctest::Approx(3.0323506874482864).epsilon(1e-10));
  CHECK(fit.n_rows == 10);
  CHECK_FALSE(fit.has_intercept);
  CHECK_FALSE(fit.rank_deficient);
}

TEST_CASE("ar(2) least squares with intercept") {
  const ARFit fit = ar_fit(kZ12, 2, true);
  REQUIRE(fit.coeffs.size() == 2);
  CHECK(fit.intercept == doctest::Approx(0.95496814605468228).epsilon(1e-9));
  CHECK(fit.coeffs[0] == doctest::Approx(-0.65283406865722726).epsilon(1e-9));
  CHECK(fit.coeffs[1] == doctest::Approx(-0.68031136633266809).epsilon(1e-9));
  CHECK(fit.sigma2 == doctest::Approx(0.30460293358777085).epsilon(1e-9));
  CHECK(fit.aic == doctest::Approx(-5.8874620761613699).epsilon(1e-9));
  CHECK(fit.has_intercept);
}

TEST_CASE("iterated ar forecasts feed predictions back in") {
  const ARFit fit = ar_fit(kZ12, 2, false);
  const Series f = ar_forecast(fit, kZ12, 3);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == doctest::Approx(-0.18458673168604861).epsilon(1e-9));
  CHECK(f[1] == doctest::Approx(-0.17843895768952728).epsilon(1e-9));
  CHECK(f[2] == doctest::Approx(0.075126456856173418).epsilon(1e-9));
}

TEST_CASE("ar(0) reduces to the intercept-only model") {
  const ARFit fit = ar_fit(kZ12, 0, true);
  double mean = 0.0;
  for (double v : kZ12) mean += v;
  mean /= static_cast<double>(kZ12.size());
  CHECK(fit.intercept == doctest::Approx(mean).epsilon(1e-13));
  const Series f = ar_forecast(fit, kZ12, 2);
  CHECK(f[0] == doctest::Approx(mean).epsilon(1e-13));
  CHECK(f[1] == doctest::Approx(mean).epsilon(1e-13));
}

TEST_CASE("context order restricts the estimation sample") {
  // with context 4 the AR(1) fit uses rows 5..T only
  const ARFit ctx = ar_fit(kZ12, 1, false, 4);
  CHECK(ctx.n_rows == kZ12.size() - 4);
  const ARFit plain = ar_fit(kZ12, 1, false);
  CHECK(plain.n_rows == kZ12.size() - 1);
}

TEST_CASE("default lag ceiling: primary rule and common variant") {
  CHECK(default_ar_pmax(60) == 0);
  CHECK(default_ar_pmax(100) == 12);
  CHECK(default_ar_pmax(300) == 12);
  CHECK(default_ar_pmax(1599) == 12);
  CHECK(default_ar_pmax(1600) == 24);

  CHECK(default_ar_pmax(60, true) == 10);
  CHECK(default_ar_pmax(100, true) == 12);
  CHECK(default_ar_pmax(300, true) == 15);
  CHECK(default_ar_pmax(1600, true) == 24);

  // capped at floor(T/4)
  CHECK(default_ar_pmax(20, true) == 5);
}

TEST_CASE("aic selection reproduces the common-sample comparison") {
  const Series y = ar2_sample(400, 17);
  const int pmax = 6;
  const ARFit winner = ar_select_aic(y, pmax, false);

  int best_p = 0;
  double best_aic = 0.0;
  for (int p = 0; p <= pmax; ++p) {
    const ARFit cand = ar_fit(y, p, false, pmax);
    if (p == 0 || cand.aic < best_aic) {
      best_aic = cand.aic;
      best_p = p;
    }
  }
  CHECK(winner.p == best_p);
  // winner is refitted on its own maximal sample
  CHECK(winner.n_rows == y.size() - static_cast<std::size_t>(winner.p));
  CHECK(winner.p >= 1);  // an AR(2) signal should never select white noise
  CHECK(winner.p <= 4);
}

TEST_CASE("collinear design falls back to a finite minimum-norm solution") {
  const Series c(30, 2.0);
  const ARFit fit = ar_fit(c, 2, true);
  CHECK(fit.rank_deficient);
  for (double v : fit.coeffs) CHECK(std::isfinite(v));
  CHECK(std::isfinite(fit.intercept));
  const Series f = ar_forecast(fit, c, 3);
  for (double v : f) CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("ar rejects impossible orders") {
  CHECK_THROWS_AS(ar_fit(kZ12, 12, false), insufficient_data);
  CHECK_THROWS_AS(ar_fit(kZ12, -1, false), std::invalid_argument);
}

TEST_CASE("har regression on a fixed 30-point series") {
  const HARFit fit = har_fit(kW30);
  CHECK(fit.b0 == doctest::Approx(-4.6179469685944987).epsilon(1e-8));
  CHECK(fit.bd == doctest::Approx(-0.4979175850694233).epsilon(1e-8));
  CHECK(fit.bw == doctest::Approx(-4.1067920033691498).epsilon(1e-8));
  CHECK(fit.bm == doctest::Approx(15.053450545021356).epsilon(1e-8));
  CHECK(fit.sigma2 == doctest::Approx(0.0019007507061047637).epsilon(1e-8));
  CHECK(fit.n_rows == 8);

  const Series f = har_forecast(fit, kW30, 2);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == doctest::Approx(0.49284144103829508).epsilon(1e-8));
  CHECK(f[1] == doctest::Approx(0.50569358499234074).epsilon(1e-8));
}

TEST_CASE("har needs more than 23 observations") {
  const Series shorty(23, 1.0);
  CHECK_THROWS_AS(har_fit(shorty), insufficient_data);
}

TEST_CASE("exponential smoothing reproduces an exact trend line") {
  Series line(40);
  for (std::size_t t = 0; t < line.size(); ++t)
    line[t] = 2.0 + 0.5 * static_cast<double>(t + 1);
  const ETSFit fit = ets_fit_select(line);
  CHECK(fit.kind != EtsKind::ann);  // a flat model cannot track a trend exactly
  const Series f = ets_forecast(fit, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double want = 2.0 + 0.5 * static_cast<double>(line.size() + i + 1);
    CHECK(f[i] == doctest::Approx(want).epsilon(1e-5));
  }
}

TEST_CASE("exponential smoothing picks the level model for a constant") {
  const Series c(30, 4.5);
  const ETSFit fit = ets_fit_select(c);
  CHECK(fit.kind == EtsKind::ann);
  const Series f = ets_forecast(fit, 4);
  for (double v : f) CHECK(v == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("forecast mechanics for each smoothing flavor") {
  ETSFit fit;
  fit.kind = EtsKind::ann;
  fit.level = 3.0;
  Series f = ets_forecast(fit, 3);
  CHECK(f[0] == 3.0);
  CHECK(f[2] == 3.0);

  fit.kind = EtsKind::aan;
  fit.level = 1.0;
  fit.trend = 0.5;
  f = ets_forecast(fit, 3);
  CHECK(f[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f[2] == doctest::Approx(2.5).epsilon(1e-15));

  fit.kind = EtsKind::aadn;
  fit.phi = 0.8;
  f = ets_forecast(fit, 3);
  CHECK(f[0] == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(1.72).epsilon(1e-15));
  CHECK(f[2] == doctest::Approx(1.976).epsilon(1e-15));
}

TEST_CASE("exponential smoothing one-step errors shrink noise") {
  // noisy level: the selected fit should track within the noise scale
  const CounterRng rng(88);
  Series y(120);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = 10.0 + 0.3 * rng.normal(t);
  const ETSFit fit = ets_fit_select(y);
  CHECK(fit.sigma2 <= 0.3);
  const Series f = ets_forecast(fit, 2);
  CHECK(std::abs(f[0] - 10.0) <= 1.0);
}

TEST_CASE("exponential smoothing needs at least five points") {
  CHECK_THROWS_AS(ets_fit_select({1.0, 2.0, 3.0, 4.0}), insufficient_data);
}
