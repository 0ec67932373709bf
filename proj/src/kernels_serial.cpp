#include "bhlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bhlab/seeding.hpp"

namespace bhlab::kernels {

double abs_pow(Complex value, double power) {
  const double sq = std::norm(value);
  if (power == 2.0)
    return sq;
  if (power == 4.0)
    return sq * sq;
  if (power == 6.0)
    return sq * sq * sq;
  if (power == 8.0)
    return (sq * sq) * (sq * sq);
  if (power == 1.0)
    return std::sqrt(sq);
  return std::pow(sq, 0.5 * power);
}

double mc_phase(std::uint64_t seed, long sample, int coordinate) {
  const std::uint64_t bits =
      derive_seed(derive_seed(seed, static_cast<std::uint64_t>(sample)), static_cast<std::uint64_t>(coordinate));
  return 2.0 * std::numbers::pi * static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace serial {

namespace {

// Straightforward evaluation: build the point, call the sparse-style loop.
Complex eval_at(const DenseMonomials& p, const std::vector<Complex>& z) {
  Complex sum{};
  for (std::size_t t = 0; t < p.size(); ++t) {
    Complex mono = p.coeffs[t];
    for (int k = 0; k < p.n; ++k)
      mono *= ipow(z[k], p.exps[t * p.n + k]);
    sum += mono;
  }
  return sum;
}

// Advances the free coordinates of an odometer; false when exhausted.
bool advance(std::vector<int>& idx, int nodes, const PinMask& pinned) {
  for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
    if (is_pinned(pinned, k))
      continue;
    if (++idx[k] < nodes)
      return true;
    idx[k] = 0;
  }
  return false;
}

} // namespace

double torus_power_mean(const DenseMonomials& p, double power, int nodes, const PinMask& pinned) {
  std::vector<int> idx(static_cast<std::size_t>(p.n), 0);
  std::vector<Complex> z(static_cast<std::size_t>(p.n));
  double sum = 0.0;
  long count = 0;
  do {
    for (int k = 0; k < p.n; ++k)
      z[k] = std::polar(1.0, 2.0 * std::numbers::pi * idx[k] / nodes);
    sum += abs_pow(eval_at(p, z), power);
    ++count;
  } while (advance(idx, nodes, pinned));
  return sum / static_cast<double>(count);
}

std::vector<GridPoint> grid_top_k(const DenseMonomials& p, int nodes, const PinMask& pinned, int k) {
  std::vector<int> idx(static_cast<std::size_t>(p.n), 0);
  std::vector<Complex> z(static_cast<std::size_t>(p.n));
  std::vector<std::pair<double, long>> scored;
  long flat = 0;
  std::vector<std::vector<int>> indices;
  do {
    for (int c = 0; c < p.n; ++c)
      z[c] = std::polar(1.0, 2.0 * std::numbers::pi * idx[c] / nodes);
    scored.emplace_back(std::abs(eval_at(p, z)), flat++);
    indices.push_back(idx);
  } while (advance(idx, nodes, pinned));
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<GridPoint> out;
  for (int r = 0; r < k && r < static_cast<int>(scored.size()); ++r) {
    GridPoint g;
    g.value = scored[r].first;
    for (int c = 0; c < p.n; ++c)
      g.theta.push_back(2.0 * std::numbers::pi * indices[scored[r].second][c] / nodes);
    out.push_back(std::move(g));
  }
  return out;
}

MomentEstimate monte_carlo_power_mean(const DenseMonomials& p, double power, long samples,
                                      std::uint64_t seed, const PinMask& pinned) {
  std::vector<Complex> z(static_cast<std::size_t>(p.n));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    for (int k = 0; k < p.n; ++k)
      z[k] = is_pinned(pinned, k) ? Complex{1.0, 0.0} : std::polar(1.0, mc_phase(seed, s, k));
    const double v = abs_pow(eval_at(p, z), power);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

} // namespace serial
} // namespace bhlab::kernels
