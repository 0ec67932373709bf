#pragma once

// Independent oracles shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "bhlab/polynomial.hpp"
#include "bhlab/tensor.hpp"

namespace oracle {

using bhlab::Complex;

inline std::vector<Complex> random_point(int n, std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (auto& c : z)
    c = {u(rng), u(rng)};
  return z;
}

inline std::vector<Complex> random_torus_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (auto& c : z)
    c = std::polar(1.0, u(rng));
  return z;
}

// Sum of a_alpha prod z_k^alpha_k with powers built by plain multiplication.
inline Complex naive_evaluate(const bhlab::PolynomialSparse& p, const std::vector<Complex>& z) {
  Complex total{};
  for (const auto& [alpha, c] : p.terms()) {
    Complex mono = c;
    for (int k = 0; k < alpha.dimension(); ++k) {
      for (int e = 0; e < alpha[static_cast<std::size_t>(k)]; ++e)
        mono *= z[static_cast<std::size_t>(k)];
    }
    total += mono;
  }
  return total;
}

// Explicit average over all slot permutations via next_permutation.
inline bhlab::MultilinearTensor permutation_average(const bhlab::MultilinearTensor& t) {
  const int m = t.arity();
  const int n = t.dimension();
  bhlab::MultilinearTensor out(m, n);
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (std::size_t f = 0; f < t.size(); ++f) {
    const auto i = t.tuple_at(f);
    for (int k = 0; k < m; ++k)
      perm[static_cast<std::size_t>(k)] = k;
    Complex sum{};
    double count = 0.0;
    do {
      std::vector<int> permuted(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k)
        permuted[static_cast<std::size_t>(k)] = i[static_cast<std::size_t>(perm[k])];
      sum += t.at(bhlab::IndexTuple(permuted, n));
      count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out[f] = sum / count;
  }
  return out;
}

// Best |f| over an equispaced grid of `nodes^dims` phase vectors.
template <class F>
double grid_max(int dims, int nodes, F f) {
  std::vector<double> theta(static_cast<std::size_t>(dims), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  double best = 0.0;
  while (true) {
    for (int k = 0; k < dims; ++k)
      theta[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * idx[static_cast<std::size_t>(k)] / nodes;
    best = std::max(best, f(theta));
    int k = dims - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == nodes - 1) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0)
      break;
    ++idx[static_cast<std::size_t>(k)];
  }
  return best;
}

inline bool bit_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // namespace oracle
