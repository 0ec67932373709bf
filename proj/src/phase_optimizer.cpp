#include "phase_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bhlab::detail {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

} // namespace

AscentResult bfgs_maximize(const Objective& f, std::vector<double> x0, int max_iters,
                           double grad_tol, double max_step) {
  const std::size_t d = x0.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  AscentResult res;
  res.x = std::move(x0);
  std::vector<double> g(d), g_new(d), x_new(d), dir(d), s(d), y(d), hy(d);
  res.value = f(res.x, g);
  res.evaluations = 1;
  res.grad_norm = std::sqrt(dot(g, g));
  if (d == 0)
    return res;

  // inverse Hessian approximation of -f, row-major
  std::vector<double> h(d * d, 0.0);
  auto reset = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i)
      h[i * d + i] = 1.0;
  };
  reset();
  bool fresh = true;

  for (int iter = 0; iter < max_iters && res.grad_norm > grad_tol; ++iter) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        acc += h[i * d + j] * g[j];
      dir[i] = acc;
    }
    double slope = dot(g, dir);
    if (!(slope > 0.0)) {
      reset();
      fresh = true;
      dir = g;
      slope = dot(g, g);
    }
    const double len = std::sqrt(dot(dir, dir));
    double t = len > max_step ? max_step / len : 1.0;
    double value_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < d; ++i)
        x_new[i] = res.x[i] + t * dir[i];
      value_new = f(x_new, g_new);
      ++res.evaluations;
      if (value_new >= res.value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      // Near an optimum the Armijo gain drops below rounding; still take
      // steps that do not lose value beyond noise and shrink the gradient.
      if (value_new >= res.value - 4.0 * eps * std::abs(res.value) &&
          dot(g_new, g_new) < 0.25 * res.grad_norm * res.grad_norm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (fresh)
        break;
      reset();
      fresh = true;
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g[i] - g_new[i]; // gradient difference of -f
    }
    res.x = x_new;
    res.value = value_new;
    g.swap(g_new);
    res.grad_norm = std::sqrt(dot(g, g));

    const double sy = dot(s, y);
    if (sy > 1e-300) {
      if (fresh) {
        const double scale = sy / dot(y, y);
        for (std::size_t i = 0; i < d; ++i)
          h[i * d + i] = scale;
        fresh = false;
      }
      for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j)
          acc += h[i * d + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          h[i * d + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
      }
    }
  }
  return res;
}

} // namespace bhlab::detail
