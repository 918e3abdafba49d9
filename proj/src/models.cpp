#include "longmem/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "longmem/optim.hpp"

namespace longmem {

namespace {

constexpr double kSigmaFloor = 1e-300;  // keeps log(sigma2) finite on exact fits

// Symmetric Jacobi eigendecomposition, adequate for the small normal-equation
// systems here (k <= ~30). A = V diag(w) V^T.
void jacobi_eigen(std::vector<double>& A, std::vector<double>& V,
                  std::vector<double>& w, std::size_t k) {
  V.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) V[i * k + i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) off += std::fabs(A[p * k + q]);
    if (off == 0.0) break;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = A[p * k + q];
        if (apq == 0.0) continue;
        const double app = A[p * k + p], aqq = A[q * k + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < k; ++i) {
          const double aip = A[i * k + p], aiq = A[i * k + q];
          A[i * k + p] = aip * c - aiq * s;
          A[i * k + q] = aip * s + aiq * c;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double api = A[p * k + i], aqi = A[q * k + i];
          A[p * k + i] = api * c - aqi * s;
          A[q * k + i] = api * s + aqi * c;
        }
        for (std::size_t i = 0; i < k; ++i) {
          const double vip = V[i * k + p], viq = V[i * k + q];
          V[i * k + p] = vip * c - viq * s;
          V[i * k + q] = vip * s + viq * c;
        }
      }
    }
  }
  w.resize(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = A[i * k + i];
}

struct OlsSolution {
  std::vector<double> beta;
  bool rank_deficient = false;
};

// Solves the normal equations G beta = v (G = X'X). Cholesky on the
// well-posed path; a singular G falls back to the eigenpseudoinverse, which
// yields the minimum-norm least-squares solution.
OlsSolution solve_normal_equations(std::vector<double> G, std::vector<double> v,
                                   std::size_t k) {
  OlsSolution out;
  out.beta.assign(k, 0.0);
  if (k == 0) return out;

  double max_diag = 0.0;
  for (std::size_t i = 0; i < k; ++i) max_diag = std::max(max_diag, G[i * k + i]);
  const double tol = std::max(max_diag, 1.0) * 1e-12;

  std::vector<double> L(k * k, 0.0);
  bool ok = true;
  for (std::size_t i = 0; i < k && ok; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = G[i * k + j];
      for (std::size_t m = 0; m < j; ++m) s -= L[i * k + m] * L[j * k + m];
      if (i == j) {
        if (s <= tol) {
          ok = false;
          break;
        }
        L[i * k + i] = std::sqrt(s);
      } else {
        L[i * k + j] = s / L[j * k + j];
      }
    }
  }

  if (ok) {
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) {
      double s = v[i];
      for (std::size_t m = 0; m < i; ++m) s -= L[i * k + m] * z[m];
      z[i] = s / L[i * k + i];
    }
    for (std::size_t ii = k; ii-- > 0;) {
      double s = z[ii];
      for (std::size_t m = ii + 1; m < k; ++m) s -= L[m * k + ii] * out.beta[m];
      out.beta[ii] = s / L[ii * k + ii];
    }
    return out;
  }

  out.rank_deficient = true;
  std::vector<double> V, w;
  jacobi_eigen(G, V, w, k);
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::fabs(x));
  const double cut = std::max(wmax, 1.0) * 1e-12;
  for (std::size_t e = 0; e < k; ++e) {
    if (std::fabs(w[e]) <= cut) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < k; ++i) proj += V[i * k + e] * v[i];
    proj /= w[e];
    for (std::size_t i = 0; i < k; ++i) out.beta[i] += proj * V[i * k + e];
  }
  return out;
}

}  // namespace

ARFit ar_fit(const Series& y, int p, bool with_intercept, int context_order) {
  if (p < 0) throw std::invalid_argument("ar_fit: p must be >= 0");
  const std::size_t T = y.size();
  const std::size_t ctx = static_cast<std::size_t>(
      std::max(p, context_order < 0 ? p : context_order));
  if (T <= ctx) throw insufficient_data("ar_fit: no usable rows after conditioning");

  const std::size_t rows = T - ctx;
  const std::size_t k = static_cast<std::size_t>(p) + (with_intercept ? 1 : 0);

  ARFit fit;
  fit.p = p;
  fit.has_intercept = with_intercept;
  fit.n_rows = rows;

  std::vector<double> beta;
  if (k > 0) {
    std::vector<double> G(k * k, 0.0), v(k, 0.0), x(k);
    for (std::size_t t = ctx; t < T; ++t) {
      std::size_t c = 0;
      if (with_intercept) x[c++] = 1.0;
      for (int l = 1; l <= p; ++l) x[c++] = y[t - static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < k; ++i) {
        v[i] += x[i] * y[t];
        for (std::size_t j = i; j < k; ++j) G[i * k + j] += x[i] * x[j];
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < i; ++j) G[i * k + j] = G[j * k + i];
    OlsSolution sol = solve_normal_equations(std::move(G), std::move(v), k);
    beta = std::move(sol.beta);
    fit.rank_deficient = sol.rank_deficient;
  }

  std::size_t c = 0;
  if (with_intercept) fit.intercept = beta.empty() ? 0.0 : beta[c++];
  fit.coeffs.assign(p, 0.0);
  for (int l = 0; l < p; ++l) fit.coeffs[l] = beta[c++];

  double rss = 0.0;
  for (std::size_t t = ctx; t < T; ++t) {
    double pred = fit.has_intercept ? fit.intercept : 0.0;
    for (int l = 1; l <= p; ++l)
      pred += fit.coeffs[l - 1] * y[t - static_cast<std::size_t>(l)];
    const double e = y[t] - pred;
    rss += e * e;
  }
  fit.sigma2 = rss / static_cast<double>(rows);
  fit.aic = static_cast<double>(rows) * std::log(std::max(fit.sigma2, kSigmaFloor)) +
            2.0 * static_cast<double>(k);
  return fit;
}

int default_ar_pmax(std::size_t T, bool common_variant) {
  const double base = std::pow(static_cast<double>(T) / 100.0, 0.25);
  int p;
  if (common_variant) {
    p = static_cast<int>(std::floor(12.0 * base + 1e-9));
  } else {
    p = 12 * static_cast<int>(std::floor(base + 1e-9));
  }
  p = std::min(p, static_cast<int>(T / 4));
  return std::max(p, 0);
}

ARFit ar_select_aic(const Series& y, int p_max, bool with_intercept) {
  const std::size_t T = y.size();
  if (p_max < 0) p_max = default_ar_pmax(T);
  if (T <= static_cast<std::size_t>(p_max) + 2)
    throw insufficient_data("ar_select_aic: sample too short for p_max");

  // All candidates share the sample conditioned on p_max values, otherwise
  // their AICs are not comparable.
  int best_p = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= p_max; ++p) {
    const ARFit f = ar_fit(y, p, with_intercept, p_max);
    if (f.aic < best_aic) {  // strict keeps ties at the smaller order
      best_aic = f.aic;
      best_p = p;
    }
  }
  // Refit the winner on its own maximal sample.
  return ar_fit(y, best_p, with_intercept, best_p);
}

Series ar_forecast(const ARFit& fit, const Series& history, std::size_t h) {
  if (history.size() < static_cast<std::size_t>(fit.p))
    throw insufficient_data("ar_forecast: history shorter than the AR order");
  Series ext(history);
  ext.reserve(history.size() + h);
  for (std::size_t step = 0; step < h; ++step) {
    double pred = fit.has_intercept ? fit.intercept : 0.0;
    for (int l = 1; l <= fit.p; ++l)
      pred += fit.coeffs[l - 1] * ext[ext.size() - static_cast<std::size_t>(l)];
    ext.push_back(pred);
  }
  return Series(ext.end() - static_cast<std::ptrdiff_t>(h), ext.end());
}

HARFit har_fit(const Series& y) {
  const std::size_t T = y.size();
  if (T <= 23) throw insufficient_data("har_fit: need more than 23 observations");

  const std::size_t k = 4;
  std::vector<double> G(k * k, 0.0), v(k, 0.0), x(k);
  std::size_t rows = 0;
  for (std::size_t t = 22; t < T; ++t) {
    double m5 = 0.0, m22 = 0.0;
    for (std::size_t i = t - 5; i < t; ++i) m5 += y[i];
    for (std::size_t i = t - 22; i < t; ++i) m22 += y[i];
    x[0] = 1.0;
    x[1] = y[t - 1];
    x[2] = m5 / 5.0;
    x[3] = m22 / 22.0;
    for (std::size_t i = 0; i < k; ++i) {
      v[i] += x[i] * y[t];
      for (std::size_t j = i; j < k; ++j) G[i * k + j] += x[i] * x[j];
    }
    ++rows;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) G[i * k + j] = G[j * k + i];
  OlsSolution sol = solve_normal_equations(std::move(G), std::move(v), k);

  HARFit fit;
  fit.b0 = sol.beta[0];
  fit.bd = sol.beta[1];
  fit.bw = sol.beta[2];
  fit.bm = sol.beta[3];
  fit.n_rows = rows;
  fit.rank_deficient = sol.rank_deficient;

  double rss = 0.0;
  for (std::size_t t = 22; t < T; ++t) {
    double m5 = 0.0, m22 = 0.0;
    for (std::size_t i = t - 5; i < t; ++i) m5 += y[i];
    for (std::size_t i = t - 22; i < t; ++i) m22 += y[i];
    const double pred = fit.b0 + fit.bd * y[t - 1] + fit.bw * m5 / 5.0 + fit.bm * m22 / 22.0;
    const double e = y[t] - pred;
    rss += e * e;
  }
  fit.sigma2 = rss / static_cast<double>(rows);
  return fit;
}

Series har_forecast(const HARFit& fit, const Series& history, std::size_t h) {
  if (history.size() < 22)
    throw insufficient_data("har_forecast: need at least 22 values of history");
  Series ext(history);
  ext.reserve(history.size() + h);
  for (std::size_t step = 0; step < h; ++step) {
    const std::size_t n = ext.size();
    double m5 = 0.0, m22 = 0.0;
    for (std::size_t i = n - 5; i < n; ++i) m5 += ext[i];
    for (std::size_t i = n - 22; i < n; ++i) m22 += ext[i];
    ext.push_back(fit.b0 + fit.bd * ext[n - 1] + fit.bw * m5 / 5.0 +
                  fit.bm * m22 / 22.0);
  }
  return Series(ext.end() - static_cast<std::ptrdiff_t>(h), ext.end());
}

namespace {

struct EtsEval {
  double sse = std::numeric_limits<double>::infinity();
  double level = 0.0, trend = 0.0;
  bool ok = false;
};

EtsEval ets_run(EtsKind kind, double alpha, double beta, double phi,
                double level0, double trend0, const Series& y) {
  EtsEval out;
  double l = level0, b = trend0, sse = 0.0;
  for (double obs : y) {
    const double mu = kind == EtsKind::ann ? l : l + phi * b;
    const double e = obs - mu;
    if (!std::isfinite(e) || std::fabs(e) > 1e150) return out;
    sse += e * e;
    switch (kind) {
      case EtsKind::ann:
        l = l + alpha * e;
        break;
      case EtsKind::aan:
        l = l + b + alpha * e;
        b = b + beta * e;
        break;
      case EtsKind::aadn:
        l = l + phi * b + alpha * e;
        b = phi * b + beta * e;
        break;
    }
  }
  out.sse = sse;
  out.level = l;
  out.trend = b;
  out.ok = std::isfinite(sse);
  return out;
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// Straight-line start for the trend candidates: OLS of y on (1, t) over the
// first few points, so an exactly linear series is fitted with zero error
// from the very first simplex vertex.
void line_start(const Series& y, double& c0, double& slope) {
  const std::size_t n = std::min<std::size_t>(y.size(), 10);
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    st += t;
    sy += y[i];
    stt += t * t;
    sty += t * y[i];
  }
  const double den = static_cast<double>(n) * stt - st * st;
  slope = den != 0.0 ? (static_cast<double>(n) * sty - st * sy) / den : 0.0;
  c0 = (sy - slope * st) / static_cast<double>(n);
}

}  // namespace

ETSFit ets_fit_select(const Series& y) {
  const std::size_t T = y.size();
  if (T < 5) throw insufficient_data("ets_fit_select: need at least 5 observations");
  const double n = static_cast<double>(T);

  double c0, slope;
  line_start(y, c0, slope);

  ETSFit best;
  double best_aicc = std::numeric_limits<double>::infinity();
  bool have = false;

  for (EtsKind kind : {EtsKind::ann, EtsKind::aan, EtsKind::aadn}) {
    const int k = kind == EtsKind::ann ? 3 : kind == EtsKind::aan ? 5 : 6;
    if (n - k - 1 <= 0) continue;

    auto unpack = [&](const std::vector<double>& u, double& a, double& bta,
                      double& ph, double& l0, double& b0) {
      a = logistic(u[0]);
      if (kind == EtsKind::ann) {
        bta = 0.0;
        ph = 1.0;
        l0 = u[1];
        b0 = 0.0;
      } else if (kind == EtsKind::aan) {
        bta = logistic(u[1]);
        ph = 1.0;
        l0 = u[2];
        b0 = u[3];
      } else {
        bta = logistic(u[1]);
        ph = 0.8 + 0.18 * logistic(u[2]);
        l0 = u[3];
        b0 = u[4];
      }
    };

    auto obj = [&](const std::vector<double>& u) {
      double a, bta, ph, l0, b0;
      unpack(u, a, bta, ph, l0, b0);
      const EtsEval ev = ets_run(kind, a, bta, ph, l0, b0, y);
      if (!ev.ok) return std::numeric_limits<double>::infinity();
      return std::log(std::max(ev.sse / n, kSigmaFloor));
    };

    std::vector<double> u0;
    if (kind == EtsKind::ann) {
      u0 = {std::log(0.3 / 0.7), y[0]};
    } else if (kind == EtsKind::aan) {
      u0 = {std::log(0.3 / 0.7), std::log(0.1 / 0.9), c0, slope};
    } else {
      u0 = {std::log(0.3 / 0.7), std::log(0.1 / 0.9), 0.0, c0, slope};
    }

    const SimplexResult r =
        nelder_mead(obj, u0, 0.3, 1e-12, 400 * static_cast<int>(u0.size()));
    if (!std::isfinite(r.fx)) continue;  // candidate never produced a finite fit

    double a, bta, ph, l0, b0;
    unpack(r.x, a, bta, ph, l0, b0);
    const EtsEval ev = ets_run(kind, a, bta, ph, l0, b0, y);
    if (!ev.ok) continue;
    const double sigma2 = ev.sse / n;
    const double aicc = n * std::log(std::max(sigma2, kSigmaFloor)) + 2.0 * k +
                        2.0 * k * (k + 1.0) / (n - k - 1.0);
    if (!have || aicc < best_aicc) {
      best_aicc = aicc;
      have = true;
      best.kind = kind;
      best.alpha = a;
      best.beta = bta;
      best.phi = ph;
      best.level0 = l0;
      best.trend0 = b0;
      best.level = ev.level;
      best.trend = ev.trend;
      best.sigma2 = sigma2;
      best.aicc = aicc;
      best.n_params = k;
    }
  }

  if (!have)
    throw estimation_failed("ets_fit_select: no candidate model admitted a fit",
                            0.0, 0.0);
  return best;
}

Series ets_forecast(const ETSFit& fit, std::size_t h) {
  Series out(h);
  double damp = 0.0, phi_pow = 1.0;
  for (std::size_t i = 1; i <= h; ++i) {
    switch (fit.kind) {
      case EtsKind::ann:
        out[i - 1] = fit.level;
        break;
      case EtsKind::aan:
        out[i - 1] = fit.level + static_cast<double>(i) * fit.trend;
        break;
      case EtsKind::aadn:
        phi_pow *= fit.phi;
        damp += phi_pow;
        out[i - 1] = fit.level + damp * fit.trend;
        break;
    }
  }
  return out;
}

}  // namespace longmem
