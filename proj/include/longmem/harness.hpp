#pragma once

#include <cstddef>
#include <string>

#include "longmem/fipipe.hpp"
#include "longmem/series.hpp"

namespace longmem {

enum class WindowKind { rolling, expanding };

struct PoosConfig {
  WindowKind window = WindowKind::rolling;
  std::size_t window_size = 180;           // rolling width / expanding start
  std::vector<std::size_t> horizons = {1, 6, 12};
  std::vector<ForecastMethodSpec> methods;
  std::string baseline = "FI(0.5)";        // label; empty disables ratios
  bool paired = true;  // a failed origin is dropped for every method at that horizon
  LagRule lag_rule;
};

struct EvalCell {
  double mse = 0.0;
  double ratio = 0.0;       // vs baseline; 0/0 -> 1 and flagged degenerate
  bool has_ratio = false;
  std::size_t count = 0;    // origins that entered the MSE
  std::size_t failures = 0;
  bool degenerate = false;
};

// Rectangular result grid with labeled rows and columns, row-major cells.
struct EvalTable {
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<EvalCell> cells;
  int baseline_row = -1;

  const EvalCell& at(std::size_t r, std::size_t c) const;
  EvalCell& at(std::size_t r, std::size_t c);
};

// Pseudo-out-of-sample evaluation. Forecast origins advance one step at a
// time; the window ending at origin t0 predicts y_{t0+h} for every requested
// horizon that exists. One fit per (origin, method) serves all horizons.
// Rows are methods, columns horizons. With `paired` set, counts are equal
// across methods within a column.
EvalTable poos_run(const Series& y, const PoosConfig& cfg);

// Sensitivity of POOS MSE to the estimation window: one row per rolling size
// (plus one expanding row when expanding_initial > 0), one column per
// method, at a single horizon. All rows share identical forecast targets:
// origins start at max(largest size, expanding_initial), so the first
// predicted index is the same everywhere. A size too small for a method
// yields a row of failures rather than aborting the study.
EvalTable window_size_study(const Series& y, const std::vector<std::size_t>& sizes,
                            std::size_t expanding_initial, std::size_t h,
                            const std::vector<ForecastMethodSpec>& methods,
                            const LagRule& rule = {});

}  // namespace longmem
