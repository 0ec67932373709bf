#pragma once

// Data-parallel kernels over phase grids on the torus. Every kernel exists as
// an OpenMP version (used by the library) and a plain serial reference kept
// for cross-checking and benchmarking.
//
// Grids: a variable marked as pinned is held at z = 1; every other variable
// runs over the N unit roots exp(2 pi i j / N). Reductions are performed per
// outer grid row and summed in row order, so results do not depend on the
// thread count.

#include <cstdint>
#include <vector>

#include "bhlab/polynomial.hpp"

namespace bhlab::kernels {

/// Per-variable flag: nonzero entries are held at z = 1. Empty means none.
using PinMask = std::vector<char>;

inline bool is_pinned(const PinMask& mask, int k) {
  return !mask.empty() && mask[static_cast<std::size_t>(k)] != 0;
}

struct GridPoint {
  double value = 0.0;             // |P| at the point
  std::vector<double> theta;      // full phase vector (length n)
};

struct MomentEstimate {
  double mean = 0.0;      // sample mean of |P|^p
  double std_error = 0.0; // standard error of the mean
};

namespace serial {

/// Mean of |P|^p over the grid.
double torus_power_mean(const DenseMonomials& p, double power, int nodes, const PinMask& pinned);

/// The k largest |P| grid points, ordered by value (desc) then grid index.
std::vector<GridPoint> grid_top_k(const DenseMonomials& p, int nodes, const PinMask& pinned, int k);

MomentEstimate monte_carlo_power_mean(const DenseMonomials& p, double power, long samples,
                                      std::uint64_t seed, const PinMask& pinned);

} // namespace serial

namespace omp {

double torus_power_mean(const DenseMonomials& p, double power, int nodes, const PinMask& pinned,
                        int threads);

std::vector<GridPoint> grid_top_k(const DenseMonomials& p, int nodes, const PinMask& pinned, int k,
                                  int threads);

MomentEstimate monte_carlo_power_mean(const DenseMonomials& p, double power, long samples,
                                      std::uint64_t seed, const PinMask& pinned, int threads);

} // namespace omp

/// |x|^p with exact repeated multiplication for small even integer p.
double abs_pow(Complex value, double power);

/// Phase of sample s of a Monte Carlo stream, shared by both implementations.
double mc_phase(std::uint64_t seed, long sample, int coordinate);

} // namespace bhlab::kernels
