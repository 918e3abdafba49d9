#include "doctest.h"

#include <cmath>

#include "longmem/fipipe.hpp"
#include "longmem/fracdiff.hpp"
#include "longmem/meanest.hpp"
#include "longmem/memest.hpp"
#include "longmem/models.hpp"
#include "longmem/rng.hpp"

using namespace longmem;

namespace {

// deterministic, integer-derived series: reproducible to the bit anywhere
Series fixture40() {
  Series y(40);
  for (std::size_t t = 1; t <= 40; ++t)
    y[t - 1] = (static_cast<double>((t * 37) % 19) - 9.0) / 7.0 +
               static_cast<double>(t) / 40.0;
  return y;
}

Series simulate_path(double d, std::size_t T, std::uint64_t seed) {
  const CounterRng rng(seed);
  Series x(T);
  for (std::size_t t = 0; t < T; ++t) x[t] = rng.normal(t);
  return frac_integrate(x, d);
}

// y_hat_{T+k} = -sum_j pi_j(d) y_hat_{T+k-j} + r_{T+k} mu + xi_hat_{T+k}
Series direct_recursion(const Series& y, double d, std::size_t h, double mu,
                        const std::vector<double>& ar) {
  const std::size_t T = y.size();
  const Series u = frac_diff(y, d);
  const Series r = r_sequence(d, T + h);
  Series xi(T);
  for (std::size_t t = 0; t < T; ++t) xi[t] = u[t] - r[t] * mu;

  Series xihat;
  {
    Series hist = xi;
    for (std::size_t k = 0; k < h; ++k) {
      double v = 0.0;
      for (std::size_t i = 0; i < ar.size(); ++i) v += ar[i] * hist[hist.size() - 1 - i];
      xihat.push_back(v);
      hist.push_back(v);
    }
  }

  const Series pi = pi_coeffs(d, T + h);
  Series path = y;
  Series out;
  for (std::size_t k = 1; k <= h; ++k) {
    const std::size_t t = T + k;  // 1-based forecast time
    double acc = 0.0;
    for (std::size_t j = 1; j < t; ++j) acc -= pi[j] * path[t - 1 - j];
    const double v = acc + r[t - 1] * mu + xihat[k - 1];
    out.push_back(v);
    path.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("method names parse to the right specification") {
  CHECK(ForecastMethodSpec::parse("FI(0.5)").kind == MethodKind::fi_fixed);
  CHECK(ForecastMethodSpec::parse("FI(0.5)").d == 0.5);
  CHECK(ForecastMethodSpec::parse("fi-0.7").d == 0.7);
  CHECK(ForecastMethodSpec::parse("fi1").d == 1.0);
  CHECK(ForecastMethodSpec::parse("FI(1)").d == 1.0);

  const auto lw = ForecastMethodSpec::parse("FI(T^0.65)");
  CHECK(lw.kind == MethodKind::fi_lw);
  CHECK(lw.alpha == 0.65);
  CHECK(ForecastMethodSpec::parse("fi-t0.8").alpha == 0.8);
  CHECK(ForecastMethodSpec::parse("fi(t^0.8)").kind == MethodKind::fi_lw);

  CHECK(ForecastMethodSpec::parse("LAR").kind == MethodKind::lar);
  CHECK(ForecastMethodSpec::parse("ar1").kind == MethodKind::ar1);
  CHECK(ForecastMethodSpec::parse("AR(1)").kind == MethodKind::ar1);
  CHECK(ForecastMethodSpec::parse("ES").kind == MethodKind::ets);
  CHECK(ForecastMethodSpec::parse("ets").kind == MethodKind::ets);
  CHECK(ForecastMethodSpec::parse("HAR").kind == MethodKind::har);
  CHECK(ForecastMethodSpec::parse("MEAN").kind == MethodKind::mean_only);
  CHECK(ForecastMethodSpec::parse("NAIVE").kind == MethodKind::naive);
  CHECK(ForecastMethodSpec::parse("rw").kind == MethodKind::naive);

  CHECK_THROWS_AS(ForecastMethodSpec::parse("arma"), std::invalid_argument);
  CHECK_THROWS_AS(ForecastMethodSpec::parse("fi(t^1.5)"), std::invalid_argument);
  CHECK_THROWS_AS(ForecastMethodSpec::parse(""), std::invalid_argument);
}

TEST_CASE("labels round-trip through the parser") {
  for (const char* name :
       {"FI(0.5)", "FI(1)", "FI(T^0.65)", "FI(T^0.8)", "LAR", "AR1", "ES", "HAR",
        "MEAN", "NAIVE"}) {
    const auto spec = ForecastMethodSpec::parse(name);
    CHECK(spec.label() == name);
    const auto again = ForecastMethodSpec::parse(spec.label());
    CHECK(again.kind == spec.kind);
    CHECK(again.d == spec.d);
    CHECK(again.alpha == spec.alpha);
  }
}

TEST_CASE("pipeline forecasts on a deterministic 40-point fixture") {
  const Series y = fixture40();
  const ForecastResult res = fi_forecast(y, 0.45, 3);
  REQUIRE(res.forecasts.size() == 3);
  // with T = 40 the lag ceiling is 0, so the residual model is white noise
  CHECK(res.ar_order == 0);
  CHECK(res.mu_hat == doctest::Approx(0.84850468453781858).epsilon(1e-11));
  CHECK(res.forecasts[0] == doctest::Approx(1.394900206722727).epsilon(1e-9));
  CHECK(res.forecasts[1] == doctest::Approx(1.1901389965059763).epsilon(1e-9));
  CHECK(res.forecasts[2] == doctest::Approx(1.0882117341640272).epsilon(1e-9));
  CHECK(res.d_used == 0.45);
}

TEST_CASE("recoloring equals the direct recursion") {
  for (std::uint64_t seed : {3ull, 11ull, 29ull}) {
    for (double d : {0.2, 0.45, 0.8}) {
      const Series y = simulate_path(d, 150, seed);
      const std::size_t h = 12;
      const ForecastResult res = fi_forecast(y, d, h);
      const Series direct = direct_recursion(y, d, h, res.mu_hat, res.ar_coeffs);
      REQUIRE(direct.size() == h);
      for (std::size_t k = 0; k < h; ++k)
        CHECK(std::abs(res.forecasts[k] - direct[k]) <= 1e-8);
    }
  }
}

TEST_CASE("residual model matches a no-intercept aic fit of the residuals") {
  const Series y = simulate_path(0.3, 220, 5);
  const double d = 0.3;
  const ForecastResult res = fi_forecast(y, d, 6);

  const Series u = frac_diff(y, d);
  const Series r = r_sequence(d, y.size());
  const double mu = robinson_mean(y, d).mu_hat;
  CHECK(res.mu_hat == doctest::Approx(mu).epsilon(1e-13));
  Series xi(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) xi[t] = u[t] - r[t] * mu;
  const ARFit fit = ar_select_aic(xi, default_ar_pmax(y.size()), false);
  CHECK(res.ar_order == fit.p);
  REQUIRE(res.ar_coeffs.size() == fit.coeffs.size());
  for (std::size_t i = 0; i < fit.coeffs.size(); ++i)
    CHECK(res.ar_coeffs[i] == doctest::Approx(fit.coeffs[i]).epsilon(1e-12));
}

TEST_CASE("dispatch routes every roster method") {
  const Series y = simulate_path(0.35, 120, 41);
  const std::size_t h = 4;

  SUBCASE("fixed d") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("FI(0.5)"), y, h);
    const auto ref = fi_forecast(y, 0.5, h);
    for (std::size_t k = 0; k < h; ++k) CHECK(res.forecasts[k] == ref.forecasts[k]);
    CHECK(res.d_used == 0.5);
  }
  SUBCASE("estimated d") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("FI(T^0.65)"), y, h);
    const double dhat = local_whittle(y, lw_bandwidth(y.size(), 0.65)).d_hat;
    CHECK(res.d_used == doctest::Approx(dhat).epsilon(1e-12));
    const auto ref = fi_forecast(y, dhat, h);
    for (std::size_t k = 0; k < h; ++k)
      CHECK(res.forecasts[k] == doctest::Approx(ref.forecasts[k]).epsilon(1e-10));
  }
  SUBCASE("lar") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("LAR"), y, h);
    const ARFit fit = ar_select_aic(y, default_ar_pmax(y.size()), true);
    const Series ref = ar_forecast(fit, y, h);
    for (std::size_t k = 0; k < h; ++k) CHECK(res.forecasts[k] == ref[k]);
    CHECK(res.ar_order == fit.p);
  }
  SUBCASE("ar1") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("AR1"), y, h);
    const Series ref = ar_forecast(ar_fit(y, 1, true), y, h);
    for (std::size_t k = 0; k < h; ++k) CHECK(res.forecasts[k] == ref[k]);
  }
  SUBCASE("ets") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("ES"), y, h);
    const Series ref = ets_forecast(ets_fit_select(y), h);
    for (std::size_t k = 0; k < h; ++k) CHECK(res.forecasts[k] == ref[k]);
  }
  SUBCASE("har") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("HAR"), y, h);
    const Series ref = har_forecast(har_fit(y), y, h);
    for (std::size_t k = 0; k < h; ++k) CHECK(res.forecasts[k] == ref[k]);
  }
  SUBCASE("mean") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("MEAN"), y, h);
    double m = 0.0;
    for (double v : y) m += v;
    m /= static_cast<double>(y.size());
    for (double f : res.forecasts) CHECK(f == doctest::Approx(m).epsilon(1e-15));
  }
  SUBCASE("naive") {
    const auto res = forecast_dispatch(ForecastMethodSpec::parse("NAIVE"), y, h);
    for (double f : res.forecasts) CHECK(f == y.back());
  }
}

TEST_CASE("pipeline rejects unusable inputs") {
  CHECK_THROWS_AS(fi_forecast({1.0, 2.0, 3.0}, 0.4, 1), insufficient_data);
  CHECK_THROWS_AS(fi_forecast(fixture40(), 0.4, 0), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(fi_forecast(fixture40(), nan, 1), std::invalid_argument);
}

TEST_CASE("unit-root pipeline tracks levels") {
  // d = 1: differencing removes the trend; forecasts continue near the level
  Series y(80);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = static_cast<double>(t) * 0.1;
  const ForecastResult res = fi_forecast(y, 1.0, 2);
  CHECK(std::abs(res.forecasts[0] - 8.0) <= 0.5);
}
