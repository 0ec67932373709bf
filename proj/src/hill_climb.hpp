#pragma once

// Coefficient-space hill climbing shared by the extremal searches.
// Internal header.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "bhlab/polynomial.hpp"

namespace bhlab::detail {

struct Scored {
  double value = 0.0;
  std::vector<double> argmax; // phases of the inner sup, reused as a warm start
};

/// score(coeffs, warm) evaluates a candidate; `warm` is the previous argmax.
using ScoreFn = std::function<Scored(const std::vector<Complex>&, const std::vector<double>&)>;

struct ClimbResult {
  std::vector<Complex> coeffs;
  Scored best;
  int accepted = 0;
};

/// One trajectory of a (1+1) evolution strategy: each step perturbs the
/// phase or modulus of one free coefficient, or all of them jointly, and
/// keeps the candidate if it scores higher. The width follows the 1/5
/// success rule. Coordinates with frozen[k] != 0 never move.
ClimbResult hill_climb(std::vector<Complex> start, const std::vector<char>& frozen, int iterations,
                       std::uint64_t seed, const ScoreFn& score);

} // namespace bhlab::detail
