#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bhlab/kernels.hpp"

namespace bhlab::kernels::omp {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

int first_free(int n, const PinMask& pinned) {
  for (int k = 0; k < n; ++k) {
    if (!is_pinned(pinned, k))
      return k;
  }
  return -1;
}

// Walks one grid row (outer free coordinate fixed at `row`), keeping a table
// of powers z_k^e that is refreshed only for coordinates that changed.
template <class Visit>
void visit_row(const DenseMonomials& p, int nodes, const PinMask& pinned, int outer, int row, Visit&& visit) {
  const int n = p.n;
  const int stride = p.max_exponent + 1;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<Complex> pw(static_cast<std::size_t>(n * stride));
  auto refresh = [&](int k) {
    const Complex z = is_pinned(pinned, k) ? Complex{1.0, 0.0}
                                  : std::polar(1.0, 2.0 * std::numbers::pi * idx[k] / nodes);
    Complex acc{1.0, 0.0};
    for (int e = 0; e < stride; ++e) {
      pw[static_cast<std::size_t>(k * stride + e)] = acc;
      acc *= z;
    }
  };
  if (outer >= 0)
    idx[outer] = row;
  for (int k = 0; k < n; ++k)
    refresh(k);
  while (true) {
    Complex sum{};
    for (std::size_t t = 0; t < p.size(); ++t) {
      Complex mono = p.coeffs[t];
      const int* e = &p.exps[t * static_cast<std::size_t>(n)];
      for (int k = 0; k < n; ++k) {
        if (e[k] != 0)
          mono *= pw[static_cast<std::size_t>(k * stride + e[k])];
      }
      sum += mono;
    }
    visit(idx, sum);
    int k = n - 1;
    for (; k >= 0; --k) {
      if (is_pinned(pinned, k) || k == outer)
        continue;
      if (++idx[k] < nodes) {
        refresh(k);
        break;
      }
      idx[k] = 0;
      refresh(k);
    }
    if (k < 0)
      return;
  }
}

} // namespace

double torus_power_mean(const DenseMonomials& p, double power, int nodes, const PinMask& pinned,
                        int threads) {
  const int outer = first_free(p.n, pinned);
  const int rows = outer >= 0 ? nodes : 1;
  std::vector<double> row_sums(static_cast<std::size_t>(rows), 0.0);
  std::vector<long> row_counts(static_cast<std::size_t>(rows), 0);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic)
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    long c = 0;
    visit_row(p, nodes, pinned, outer, r, [&](const std::vector<int>&, Complex v) {
      s += abs_pow(v, power);
      ++c;
    });
    row_sums[r] = s;
    row_counts[r] = c;
  }
  double total = 0.0;
  long count = 0;
  for (int r = 0; r < rows; ++r) {
    total += row_sums[r];
    count += row_counts[r];
  }
  return total / static_cast<double>(count);
}

std::vector<GridPoint> grid_top_k(const DenseMonomials& p, int nodes, const PinMask& pinned, int k,
                                  int threads) {
  struct Candidate {
    double value;
    long flat;
    std::vector<int> idx;
  };
  auto before = [](const Candidate& a, const Candidate& b) {
    return a.value > b.value || (a.value == b.value && a.flat < b.flat);
  };
  const int outer = first_free(p.n, pinned);
  const int rows = outer >= 0 ? nodes : 1;
  std::vector<std::vector<Candidate>> per_row(static_cast<std::size_t>(rows));
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic)
  for (int r = 0; r < rows; ++r) {
    auto& best = per_row[r];
    visit_row(p, nodes, pinned, outer, r, [&](const std::vector<int>& idx, Complex v) {
      long flat = 0;
      for (int c = 0; c < p.n; ++c)
        flat = flat * nodes + idx[c];
      Candidate cand{std::abs(v), flat, {}};
      if (static_cast<int>(best.size()) == k && !before(cand, best.back()))
        return;
      cand.idx = idx;
      best.insert(std::upper_bound(best.begin(), best.end(), cand, before), std::move(cand));
      if (static_cast<int>(best.size()) > k)
        best.pop_back();
    });
  }
  std::vector<Candidate> merged;
  for (auto& row : per_row)
    for (auto& c : row)
      merged.push_back(std::move(c));
  std::sort(merged.begin(), merged.end(), before);
  std::vector<GridPoint> out;
  for (int r = 0; r < k && r < static_cast<int>(merged.size()); ++r) {
    GridPoint g;
    g.value = merged[r].value;
    for (int c = 0; c < p.n; ++c)
      g.theta.push_back(2.0 * std::numbers::pi * merged[r].idx[c] / nodes);
    out.push_back(std::move(g));
  }
  return out;
}

MomentEstimate monte_carlo_power_mean(const DenseMonomials& p, double power, long samples,
                                      std::uint64_t seed, const PinMask& pinned, int threads) {
  constexpr long block = 1024;
  const long blocks = (samples + block - 1) / block;
  std::vector<double> sums(static_cast<std::size_t>(blocks), 0.0);
  std::vector<double> sums_sq(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
  for (long b = 0; b < blocks; ++b) {
    std::vector<Complex> z(static_cast<std::size_t>(p.n));
    double s = 0.0;
    double s2 = 0.0;
    const long end = std::min(samples, (b + 1) * block);
    for (long i = b * block; i < end; ++i) {
      for (int k = 0; k < p.n; ++k)
        z[k] = is_pinned(pinned, k) ? Complex{1.0, 0.0} : std::polar(1.0, mc_phase(seed, i, k));
      Complex sum{};
      for (std::size_t t = 0; t < p.size(); ++t) {
        Complex mono = p.coeffs[t];
        for (int k = 0; k < p.n; ++k)
          mono *= ipow(z[k], p.exps[t * static_cast<std::size_t>(p.n) + k]);
        sum += mono;
      }
      const double v = abs_pow(sum, power);
      s += v;
      s2 += v * v;
    }
    sums[b] = s;
    sums_sq[b] = s2;
  }
  double s = 0.0;
  double s2 = 0.0;
  for (long b = 0; b < blocks; ++b) {
    s += sums[b];
    s2 += sums_sq[b];
  }
  const double mean = s / static_cast<double>(samples);
  const double var = std::max(0.0, s2 / static_cast<double>(samples) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

} // namespace bhlab::kernels::omp
