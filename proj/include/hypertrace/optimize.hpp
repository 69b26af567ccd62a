#pragma once

#include <functional>
#include <vector>

#include "hypertrace/lorentz.hpp"

namespace hypertrace {

using Objective = std::function<double(const Vector&)>;

struct MinimizeResult {
  Vector x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  // best vertex (x..., f) per iteration
  std::vector<std::vector<double>> trace;
};

/// Cyclic line searches (Brent on a bracket around the current value,
/// widened while the minimum sits on its edge).
MinimizeResult coordinate_descent(const Objective& f, Vector x0, double bracket = 1e-2,
                                  int max_sweeps = 20, double tol = 1e-12);

/// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2). Converged when
/// the spread of simplex values drops to tol * max(1, |f_best|).
MinimizeResult nelder_mead(const Objective& f, Vector x0, double step = 1e-3,
                           int max_iter = 500, double tol = 1e-12);

}  // namespace hypertrace
