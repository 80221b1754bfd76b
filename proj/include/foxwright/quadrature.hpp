#pragma once

#include <functional>

namespace foxwright {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [lo, hi]. Bisects until the panel estimate
// meets max(abs_tol_panel, rel_tol * |panel|) or max_depth is hit; in the
// latter case the panel is accepted and `converged` is cleared.
QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol, double rel_tol,
                     int max_depth = 15);

}  // namespace foxwright
