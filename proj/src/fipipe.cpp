#include "longmem/fipipe.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "longmem/fracdiff.hpp"
#include "longmem/meanest.hpp"
#include "longmem/memest.hpp"
#include "longmem/models.hpp"

namespace longmem {

namespace {

std::string lower(const std::string& s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// strips the surroundings of a parameter in "fi(x)" / "fi-x" / "fix" forms
bool parse_fi_param(const std::string& body, double& value) {
  if (body.empty()) return false;
  try {
    std::size_t used = 0;
    value = std::stod(body, &used);
    return used == body.size();
  } catch (...) {
    return false;
  }
}

std::string trim_number(double v) {
  // shortest representation that still reads naturally in labels
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ForecastMethodSpec ForecastMethodSpec::parse(const std::string& name) {
  std::string s = lower(name);
  // drop spaces
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  s = t;

  ForecastMethodSpec spec;
  if (s == "lar") {
    spec.kind = MethodKind::lar;
    return spec;
  }
  if (s == "ar1" || s == "ar(1)") {
    spec.kind = MethodKind::ar1;
    return spec;
  }
  if (s == "es" || s == "ets") {
    spec.kind = MethodKind::ets;
    return spec;
  }
  if (s == "har") {
    spec.kind = MethodKind::har;
    return spec;
  }
  if (s == "mean") {
    spec.kind = MethodKind::mean_only;
    return spec;
  }
  if (s == "naive" || s == "rw") {
    spec.kind = MethodKind::naive;
    return spec;
  }
  if (s.rfind("fi", 0) == 0) {
    std::string body = s.substr(2);
    if (!body.empty() && body.front() == '(') {
      if (body.back() != ')')
        throw std::invalid_argument("unbalanced parentheses in method name: " + name);
      body = body.substr(1, body.size() - 2);
    } else if (!body.empty() && body.front() == '-') {
      body = body.substr(1);
    }
    // bandwidth-exponent form: T^alpha (alias: t0.65)
    if (body.rfind("t^", 0) == 0 || body.rfind("t", 0) == 0) {
      const std::string num = body.rfind("t^", 0) == 0 ? body.substr(2) : body.substr(1);
      double a;
      if (parse_fi_param(num, a) && a > 0.0 && a < 1.0) {
        spec.kind = MethodKind::fi_lw;
        spec.alpha = a;
        return spec;
      }
      throw std::invalid_argument("bad bandwidth exponent in method name: " + name);
    }
    double d;
    if (parse_fi_param(body, d)) {
      spec.kind = MethodKind::fi_fixed;
      spec.d = d;
      return spec;
    }
  }
  throw std::invalid_argument("unknown forecast method: " + name);
}

std::string ForecastMethodSpec::label() const {
  switch (kind) {
    case MethodKind::fi_fixed:
      return "FI(" + trim_number(d) + ")";
    case MethodKind::fi_lw:
      return "FI(T^" + trim_number(alpha) + ")";
    case MethodKind::lar:
      return "LAR";
    case MethodKind::ar1:
      return "AR1";
    case MethodKind::ets:
      return "ES";
    case MethodKind::har:
      return "HAR";
    case MethodKind::mean_only:
      return "MEAN";
    case MethodKind::naive:
      return "NAIVE";
  }
  return "?";
}

ForecastResult fi_forecast(const Series& y, double d, std::size_t h,
                           const LagRule& rule) {
  const std::size_t T = y.size();
  if (T < 4) throw insufficient_data("fi_forecast: series too short");
  if (h == 0) throw std::invalid_argument("fi_forecast: h must be >= 1");
  if (!std::isfinite(d)) throw std::invalid_argument("fi_forecast: d must be finite");

  const MeanEstimate mu = robinson_mean(y, d);
  const Series u = frac_diff(y, d);
  const Series r = r_sequence(d, T);
  Series xi(T);
  for (std::size_t t = 0; t < T; ++t) xi[t] = u[t] - r[t] * mu.mu_hat;

  // Short-memory structure of the residuals; no intercept, the location is
  // already carried by mu_hat.
  const int pmax = default_ar_pmax(T, rule.common_variant);
  const ARFit ar = ar_select_aic(xi, pmax, false);
  const Series xi_hat = ar_forecast(ar, xi, h);

  // Recoloring: integrate the observed residuals with their forecasts
  // appended; the tail plus mu_hat is the forecast path.
  Series w(xi);
  w.insert(w.end(), xi_hat.begin(), xi_hat.end());
  const Series z = frac_integrate(w, d);

  ForecastResult out;
  out.forecasts.assign(z.end() - static_cast<std::ptrdiff_t>(h), z.end());
  for (double& f : out.forecasts) f += mu.mu_hat;
  out.d_used = d;
  out.mu_hat = mu.mu_hat;
  out.ar_order = ar.p;
  out.ar_coeffs = ar.coeffs;
  out.rank_deficient = ar.rank_deficient;
  return out;
}

ForecastResult forecast_dispatch(const ForecastMethodSpec& spec,
                                 const Series& window, std::size_t h,
                                 const LagRule& rule) {
  const std::size_t T = window.size();
  if (h == 0) throw std::invalid_argument("forecast_dispatch: h must be >= 1");
  ForecastResult out;
  out.method_label = spec.label();

  switch (spec.kind) {
    case MethodKind::fi_fixed: {
      ForecastResult r = fi_forecast(window, spec.d, h, rule);
      r.method_label = out.method_label;
      return r;
    }
    case MethodKind::fi_lw: {
      const std::size_t m = lw_bandwidth(T, spec.alpha);
      const MemoryEstimate est = local_whittle(window, m);
      ForecastResult r = fi_forecast(window, est.d_hat, h, rule);
      r.method_label = out.method_label;
      return r;
    }
    case MethodKind::lar: {
      const ARFit fit = ar_select_aic(window, default_ar_pmax(T, rule.common_variant), true);
      out.forecasts = ar_forecast(fit, window, h);
      out.ar_order = fit.p;
      out.ar_coeffs = fit.coeffs;
      out.rank_deficient = fit.rank_deficient;
      return out;
    }
    case MethodKind::ar1: {
      const ARFit fit = ar_fit(window, 1, true);
      out.forecasts = ar_forecast(fit, window, h);
      out.ar_order = 1;
      out.ar_coeffs = fit.coeffs;
      out.rank_deficient = fit.rank_deficient;
      return out;
    }
    case MethodKind::ets: {
      const ETSFit fit = ets_fit_select(window);
      out.forecasts = ets_forecast(fit, h);
      return out;
    }
    case MethodKind::har: {
      const HARFit fit = har_fit(window);
      out.forecasts = har_forecast(fit, window, h);
      out.rank_deficient = fit.rank_deficient;
      return out;
    }
    case MethodKind::mean_only: {
      const double m = arithmetic_mean(window).mu_hat;
      out.forecasts.assign(h, m);
      return out;
    }
    case MethodKind::naive: {
      if (window.empty()) throw insufficient_data("naive: empty window");
      out.forecasts.assign(h, window.back());
      return out;
    }
  }
  throw std::invalid_argument("forecast_dispatch: unhandled method");
}

}  // namespace longmem
