#pragma once

// Objectives maximized by the sup-norm estimators, with analytic gradients.
// Internal header.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "bhlab/polynomial.hpp"

namespace bhlab::detail {

// |P|^2 / scale^2 over free phases, gradient from dP/dtheta_k = i sum alpha_k a z^alpha.
struct PhaseObjective {
  const DenseMonomials& dense;
  std::vector<int> free_vars;
  double inv_scale_sq;

  double operator()(std::span<const double> x, std::span<double> grad) const {
    const int n = dense.n;
    const int stride = dense.max_exponent + 1;
    std::vector<Complex> pw(static_cast<std::size_t>(n * stride));
    std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      theta[free_vars[j]] = x[j];
    for (int k = 0; k < n; ++k) {
      const Complex z = std::polar(1.0, theta[k]);
      Complex acc{1.0, 0.0};
      for (int e = 0; e < stride; ++e) {
        pw[static_cast<std::size_t>(k * stride + e)] = acc;
        acc *= z;
      }
    }
    Complex value{};
    std::vector<Complex> deriv(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < dense.size(); ++t) {
      Complex mono = dense.coeffs[t];
      const int* e = &dense.exps[t * static_cast<std::size_t>(n)];
      for (int k = 0; k < n; ++k) {
        if (e[k] != 0)
          mono *= pw[static_cast<std::size_t>(k * stride + e[k])];
      }
      value += mono;
      for (int k = 0; k < n; ++k) {
        if (e[k] != 0)
          deriv[k] += static_cast<double>(e[k]) * mono;
      }
    }
    for (std::size_t j = 0; j < free_vars.size(); ++j) {
      // d|P|^2/dtheta = 2 Re(conj(P) i D) = -2 Im(conj(P) D)
      grad[j] = -2.0 * std::imag(std::conj(value) * deriv[free_vars[j]]) * inv_scale_sq;
    }
    return std::norm(value) * inv_scale_sq;
  }
};

// z_k = t_k e^{i theta_k} with t_k = w_k^{1/p}, w = softmax(u), so z lies on
// the l_p unit sphere. Variables: u_0..u_{n-1}, then the free phases.
struct SphereObjective {
  const DenseMonomials& dense;
  std::vector<int> free_vars;
  double power;
  double inv_scale_sq;

  Complex point_value(std::span<const double> x, std::vector<Complex>& deriv,
                      std::vector<double>& w) const {
    const int n = dense.n;
    double umax = x[0];
    for (int k = 1; k < n; ++k)
      umax = std::max(umax, x[k]);
    double total = 0.0;
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
      w[k] = std::exp(x[k] - umax);
      total += w[k];
    }
    std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      theta[free_vars[j]] = x[static_cast<std::size_t>(n) + j];
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      w[k] /= total;
      z[k] = std::polar(std::pow(w[k], 1.0 / power), theta[k]);
    }
    deriv.assign(static_cast<std::size_t>(n), Complex{});
    Complex value{};
    for (std::size_t t = 0; t < dense.size(); ++t) {
      Complex mono = dense.coeffs[t];
      const int* e = &dense.exps[t * static_cast<std::size_t>(n)];
      for (int k = 0; k < n; ++k) {
        if (e[k] != 0)
          mono *= ipow(z[k], e[k]);
      }
      value += mono;
      for (int k = 0; k < n; ++k) {
        if (e[k] != 0)
          deriv[k] += static_cast<double>(e[k]) * mono;
      }
    }
    return value;
  }

  double operator()(std::span<const double> x, std::span<double> grad) const {
    const int n = dense.n;
    std::vector<Complex> deriv;
    std::vector<double> w;
    const Complex value = point_value(x, deriv, w);
    Complex total{};
    for (const auto& dk : deriv)
      total += dk;
    const Complex cv = std::conj(value);
    for (int j = 0; j < n; ++j) {
      const Complex dp = (deriv[j] - w[j] * total) / power;
      grad[j] = 2.0 * std::real(cv * dp) * inv_scale_sq;
    }
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      grad[static_cast<std::size_t>(n) + j] =
          -2.0 * std::imag(cv * deriv[free_vars[j]]) * inv_scale_sq;
    return std::norm(value) * inv_scale_sq;
  }
};

} // namespace bhlab::detail
