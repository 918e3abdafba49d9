#include "longmem/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "longmem/series.hpp"

namespace longmem {

namespace {
constexpr int kGridPoints = 41;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
}  // namespace

ScalarMinResult minimize_scalar(const std::function<double(double)>& f,
                                double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: need tol > 0");

  int evals = 0;
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  auto eval = [&](double x) {
    const double v = f(x);
    ++evals;
    if (!std::isfinite(v))
      throw estimation_failed("objective not finite during scalar search",
                              best_x, best_f);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
    return v;
  };

  // Coarse scan: these objectives can have several basins, and golden
  // section alone would lock onto whichever one brackets the endpoints.
  double grid_min = std::numeric_limits<double>::infinity();
  double grid_max = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  double gx[kGridPoints], gf[kGridPoints];
  for (int i = 0; i < kGridPoints; ++i) {
    gx[i] = lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1);
    gf[i] = eval(gx[i]);
    if (gf[i] < grid_min) {
      grid_min = gf[i];
      best_i = i;
    }
    grid_max = std::max(grid_max, gf[i]);
  }
  if (grid_min == grid_max) {
    // Flat objective: no information, settle on the midpoint.
    const double mid = 0.5 * (lo + hi);
    const double fm = eval(mid);
    return {mid, fm, evals};
  }

  double a = gx[std::max(best_i - 1, 0)];
  double b = gx[std::min(best_i + 1, kGridPoints - 1)];

  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = eval(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = eval(xm);
  // Guard against a midpoint eval that is marginally worse than an interior
  // probe: report the best point actually seen.
  if (fm <= best_f) return {xm, fm, evals};
  return {best_x, best_f, evals};
}

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double step, double ftol, int max_evals) {
  const std::size_t dim = x0.size();
  if (dim == 0) {
    const double v = f(x0);
    return {x0, v, 1, true};
  }

  const double inf = std::numeric_limits<double>::infinity();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++evals;
    return std::isfinite(v) ? v : inf;  // barrier, not an error
  };

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 1; i <= dim; ++i) pts[i][i - 1] += step;
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> ord(dim + 1);
  auto sort_order = [&]() {
    for (std::size_t i = 0; i <= dim; ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::size_t l, std::size_t r) { return fv[l] < fv[r]; });
  };

  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  while (evals < max_evals) {
    sort_order();
    const std::size_t ibest = ord[0], iworst = ord[dim], isecond = ord[dim - 1];
    if (std::isfinite(fv[ibest]) && std::isfinite(fv[iworst]) &&
        fv[iworst] - fv[ibest] <= ftol) {
      return {pts[ibest], fv[ibest], evals, true};
    }

    for (std::size_t k = 0; k < dim; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= dim; ++i)
        if (i != iworst) s += pts[i][k];
      centroid[k] = s / static_cast<double>(dim);
    }

    for (std::size_t k = 0; k < dim; ++k)
      xr[k] = centroid[k] + (centroid[k] - pts[iworst][k]);
    const double fr = eval(xr);

    if (fr < fv[ibest]) {
      for (std::size_t k = 0; k < dim; ++k)
        xe[k] = centroid[k] + 2.0 * (centroid[k] - pts[iworst][k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[iworst] = xe;
        fv[iworst] = fe;
      } else {
        pts[iworst] = xr;
        fv[iworst] = fr;
      }
    } else if (fr < fv[isecond]) {
      pts[iworst] = xr;
      fv[iworst] = fr;
    } else {
      const bool outside = fr < fv[iworst];
      const std::vector<double>& against = outside ? xr : pts[iworst];
      for (std::size_t k = 0; k < dim; ++k)
        xc[k] = centroid[k] + 0.5 * (against[k] - centroid[k]);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[iworst])) {
        pts[iworst] = xc;
        fv[iworst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == ibest) continue;
          for (std::size_t k = 0; k < dim; ++k)
            pts[i][k] = pts[ibest][k] + 0.5 * (pts[i][k] - pts[ibest][k]);
          fv[i] = eval(pts[i]);
          if (evals >= max_evals) break;
        }
      }
    }
  }

  sort_order();
  return {pts[ord[0]], fv[ord[0]], evals, false};
}

}  // namespace longmem
