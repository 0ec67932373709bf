#pragma once

// Local ascent used by every sup-norm estimator. Internal header.

#include <functional>
#include <span>
#include <vector>

namespace bhlab::detail {

/// f(x, grad) returns the objective and writes its gradient.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  long evaluations = 0;
};

/// BFGS ascent with backtracking line search. Stops when the gradient norm
/// drops below `grad_tol`, after `max_iters` iterations, or when no step
/// improves the objective.
AscentResult bfgs_maximize(const Objective& f, std::vector<double> x0, int max_iters,
                           double grad_tol, double max_step);

} // namespace bhlab::detail
