#include "longmem/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace longmem {

const EvalCell& EvalTable::at(std::size_t r, std::size_t c) const {
  return cells.at(r * col_labels.size() + c);
}

EvalCell& EvalTable::at(std::size_t r, std::size_t c) {
  return cells.at(r * col_labels.size() + c);
}

namespace {

struct OriginOutcome {
  // per (method, horizon): squared error, NaN when the fit failed or the
  // horizon is out of range for this origin
  std::vector<double> sq;
  std::vector<bool> failed;  // per method
};

}  // namespace

EvalTable poos_run(const Series& y, const PoosConfig& cfg) {
  const std::size_t T = y.size();
  if (cfg.methods.empty()) throw std::invalid_argument("poos_run: empty roster");
  if (cfg.horizons.empty()) throw std::invalid_argument("poos_run: no horizons");
  if (cfg.window_size < 4) throw std::invalid_argument("poos_run: window_size must be >= 4");
  if (T <= cfg.window_size)
    throw insufficient_data("poos_run: series shorter than the fit window");
  for (std::size_t h : cfg.horizons)
    if (h == 0) throw std::invalid_argument("poos_run: horizons must be >= 1");

  const std::size_t nm = cfg.methods.size();
  const std::size_t nh = cfg.horizons.size();
  const std::size_t hmax = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());

  // forecast origins: the fit sample ends at index t0-1 (size >= window_size)
  const std::size_t first = cfg.window_size;
  const std::size_t norig = T - first;
  std::vector<OriginOutcome> outcomes(norig);

  const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(norig);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t oi = 0; oi < pn; ++oi) {
    const std::size_t t0 = first + static_cast<std::size_t>(oi);
    const std::size_t begin =
        cfg.window == WindowKind::rolling ? t0 - cfg.window_size : 0;
    const Series window(y.begin() + static_cast<std::ptrdiff_t>(begin),
                        y.begin() + static_cast<std::ptrdiff_t>(t0));
    // the longest horizon with an observed target at this origin
    const std::size_t reach = std::min(hmax, T - t0);

    OriginOutcome& out = outcomes[static_cast<std::size_t>(oi)];
    out.sq.assign(nm * nh, std::numeric_limits<double>::quiet_NaN());
    out.failed.assign(nm, false);

    for (std::size_t mi = 0; mi < nm; ++mi) {
      try {
        const ForecastResult f =
            forecast_dispatch(cfg.methods[mi], window, reach, cfg.lag_rule);
        for (std::size_t hi = 0; hi < nh; ++hi) {
          const std::size_t h = cfg.horizons[hi];
          if (h > reach) continue;
          const double e = f.forecasts[h - 1] - y[t0 + h - 1];
          out.sq[mi * nh + hi] = e * e;
        }
      } catch (const error&) {
        out.failed[mi] = true;
      }
    }
  }

  EvalTable table;
  table.title = cfg.window == WindowKind::rolling ? "rolling" : "expanding";
  for (const auto& m : cfg.methods) table.row_labels.push_back(m.label());
  for (std::size_t h : cfg.horizons) table.col_labels.push_back("h=" + std::to_string(h));
  table.cells.assign(nm * nh, EvalCell{});
  table.baseline_row = -1;
  for (std::size_t mi = 0; mi < nm; ++mi)
    if (cfg.methods[mi].label() == cfg.baseline) table.baseline_row = static_cast<int>(mi);

  // fold sequentially in origin order
  std::vector<double> sums(nm * nh, 0.0);
  std::vector<std::size_t> counts(nm * nh, 0);
  std::vector<std::size_t> fails(nm, 0);
  for (const OriginOutcome& out : outcomes) {
    for (std::size_t mi = 0; mi < nm; ++mi)
      if (out.failed[mi]) ++fails[mi];
    for (std::size_t hi = 0; hi < nh; ++hi) {
      if (cfg.paired) {
        // a (origin, horizon) slot counts only when every method scored it
        bool all = true;
        for (std::size_t mi = 0; mi < nm; ++mi)
          if (std::isnan(out.sq[mi * nh + hi])) { all = false; break; }
        if (!all) continue;
      }
      for (std::size_t mi = 0; mi < nm; ++mi) {
        const double v = out.sq[mi * nh + hi];
        if (!std::isnan(v)) {
          sums[mi * nh + hi] += v;
          ++counts[mi * nh + hi];
        }
      }
    }
  }

  for (std::size_t mi = 0; mi < nm; ++mi) {
    for (std::size_t hi = 0; hi < nh; ++hi) {
      EvalCell& c = table.cells[mi * nh + hi];
      c.count = counts[mi * nh + hi];
      c.failures = fails[mi];
      c.mse = c.count > 0 ? sums[mi * nh + hi] / static_cast<double>(c.count) : 0.0;
    }
  }
  if (table.baseline_row >= 0) {
    const std::size_t bi = static_cast<std::size_t>(table.baseline_row);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      for (std::size_t hi = 0; hi < nh; ++hi) {
        EvalCell& c = table.cells[mi * nh + hi];
        const EvalCell& b = table.cells[bi * nh + hi];
        if (b.mse > 0.0) {
          c.ratio = c.mse / b.mse;
          c.has_ratio = true;
        } else if (c.mse == 0.0) {
          c.ratio = 1.0;  // 0/0: both methods were exact
          c.has_ratio = true;
          c.degenerate = true;
        } else {
          c.ratio = std::numeric_limits<double>::infinity();
          c.has_ratio = true;
          c.degenerate = true;
        }
      }
    }
  }
  return table;
}

EvalTable window_size_study(const Series& y, const std::vector<std::size_t>& sizes,
                            std::size_t expanding_initial, std::size_t h,
                            const std::vector<ForecastMethodSpec>& methods,
                            const LagRule& rule) {
  const std::size_t T = y.size();
  if (sizes.empty() && expanding_initial == 0)
    throw std::invalid_argument("window_size_study: no rows requested");
  if (methods.empty()) throw std::invalid_argument("window_size_study: empty roster");
  if (h == 0) throw std::invalid_argument("window_size_study: horizon must be >= 1");

  // every row forecasts the same targets: origins start at the largest window
  std::size_t first = expanding_initial;
  for (std::size_t w : sizes) first = std::max(first, w);
  if (T < first + h)
    throw insufficient_data(
        "window_size_study: series shorter than the largest window plus horizon");

  const std::size_t norig = T - first - h + 1;
  const bool with_expanding = expanding_initial > 0;
  const std::size_t nrow = sizes.size() + (with_expanding ? 1 : 0);
  const std::size_t nm = methods.size();

  EvalTable table;
  table.title = "window";
  for (std::size_t w : sizes) table.row_labels.push_back("W=" + std::to_string(w));
  if (with_expanding) table.row_labels.push_back("expanding");
  for (const auto& m : methods) table.col_labels.push_back(m.label());
  table.cells.assign(nrow * nm, EvalCell{});
  table.baseline_row = -1;

  std::vector<double> slot(norig * nrow * nm, std::numeric_limits<double>::quiet_NaN());

  const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(norig);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t oi = 0; oi < pn; ++oi) {
    const std::size_t t0 = first + static_cast<std::size_t>(oi);
    const double target = y[t0 + h - 1];
    for (std::size_t ri = 0; ri < nrow; ++ri) {
      const std::size_t begin = ri < sizes.size() ? t0 - sizes[ri] : 0;
      const Series window(y.begin() + static_cast<std::ptrdiff_t>(begin),
                          y.begin() + static_cast<std::ptrdiff_t>(t0));
      for (std::size_t mi = 0; mi < nm; ++mi) {
        try {
          const ForecastResult f = forecast_dispatch(methods[mi], window, h, rule);
          const double e = f.forecasts[h - 1] - target;
          slot[(static_cast<std::size_t>(oi) * nrow + ri) * nm + mi] = e * e;
        } catch (const error&) {
        }
      }
    }
  }

  for (std::size_t ri = 0; ri < nrow; ++ri) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      double sum = 0.0;
      std::size_t used = 0, failed = 0;
      for (std::size_t oi = 0; oi < norig; ++oi) {
        const double v = slot[(oi * nrow + ri) * nm + mi];
        if (std::isnan(v)) {
          ++failed;
        } else {
          sum += v;
          ++used;
        }
      }
      EvalCell& c = table.cells[ri * nm + mi];
      c.count = used;
      c.failures = failed;
      c.mse = used > 0 ? sum / static_cast<double>(used) : 0.0;
    }
  }
  return table;
}

}  // namespace longmem
