#pragma once

#include <functional>

namespace tailmix {

struct QuadResult {
  double value;
  double error;      // accumulated Kronrod error estimate
  bool converged;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] to an absolute tolerance. Splits the
// worst interval first; gives up (converged = false) once max_intervals
// subdivisions are spent.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_intervals = 2000);

}  // namespace tailmix
