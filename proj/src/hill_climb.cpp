#include "hill_climb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bhlab::detail {

ClimbResult hill_climb(std::vector<Complex> start, const std::vector<char>& frozen, int iterations,
                       std::uint64_t seed, const ScoreFn& score) {
  ClimbResult out;
  out.coeffs = std::move(start);
  out.best = score(out.coeffs, {});
  std::vector<std::size_t> movable;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    if (frozen.empty() || frozen[k] == 0)
      movable.push_back(k);
  }
  if (movable.empty())
    return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, movable.size() - 1);
  std::uniform_int_distribution<int> move(0, 2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double joint = 1.0 / std::sqrt(static_cast<double>(movable.size()));
  // step width under the 1/5 success rule
  double width = 0.5;
  for (int it = 0; it < iterations; ++it) {
    std::vector<Complex> cand = out.coeffs;
    auto nudge = [&](std::size_t k, double w) {
      double r = std::abs(cand[k]);
      if (r == 0.0)
        r = 1e-3;
      const double phase = std::arg(cand[k]) + std::numbers::pi * w * gauss(rng);
      cand[k] = std::polar(r * std::exp(0.7 * w * gauss(rng)), phase);
    };
    switch (move(rng)) {
    case 0: { // phase of one coefficient
      const std::size_t k = movable[pick(rng)];
      cand[k] *= std::polar(1.0, std::numbers::pi * width * gauss(rng));
      break;
    }
    case 1: { // modulus of one coefficient
      const std::size_t k = movable[pick(rng)];
      const double r = std::max(std::abs(cand[k]), 1e-3);
      cand[k] = std::polar(r * std::exp(0.7 * width * gauss(rng)), std::arg(cand[k]));
      break;
    }
    default:
      for (std::size_t k : movable)
        nudge(k, width * joint);
      break;
    }
    Scored s = score(cand, out.best.argmax);
    if (s.value > out.best.value) {
      out.coeffs = std::move(cand);
      out.best = std::move(s);
      ++out.accepted;
      width = std::min(1.0, width * std::exp(1.0 / 3.0));
    } else {
      width = std::max(1e-7, width * std::exp(-1.0 / 12.0));
    }
  }
  return out;
}

} // namespace bhlab::detail
