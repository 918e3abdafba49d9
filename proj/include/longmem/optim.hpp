#pragma once

#include <functional>
#include <vector>

namespace longmem {

struct ScalarMinResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
};

// Minimizes f on [lo, hi]: a 41-point grid scan locates the basin (objectives
// here can be multimodal), then golden-section narrows the bracketing cell to
// width <= tol. A constant objective returns the interval midpoint. Any
// non-finite objective value raises estimation_failed carrying the best
// point seen so far.
ScalarMinResult minimize_scalar(const std::function<double(double)>& f,
                                double lo, double hi, double tol = 1e-6);

struct SimplexResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead. Non-finite objective values are treated as
// +inf (a barrier), not an error; `converged` is false when the eval budget
// ran out before the simplex spread fell below ftol or when no finite value
// was ever seen. Fully deterministic for a given start.
SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double step, double ftol = 1e-10,
    int max_evals = 2000);

}  // namespace longmem
