#include "bhlab/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace bhlab {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty())
    throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  for (int e : exponents_) {
    if (e < 0)
      throw std::invalid_argument("MultiIndex: negative exponent");
    degree_ += e;
  }
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = exponents_.size() <=> other.exponents_.size(); c != 0)
    return c;
  if (auto c = degree_ <=> other.degree_; c != 0)
    return c;
  // larger leading exponent sorts first
  for (std::size_t k = 0; k < exponents_.size(); ++k) {
    if (exponents_[k] != other.exponents_[k])
      return other.exponents_[k] <=> exponents_[k];
  }
  return std::strong_ordering::equal;
}

IndexTuple::IndexTuple(std::vector<int> entries, int n) : entries_(std::move(entries)), n_(n) {
  if (n < 1)
    throw std::invalid_argument("IndexTuple: dimension must be >= 1");
  for (int e : entries_) {
    if (e < 1 || e > n)
      throw std::invalid_argument("IndexTuple: entry " + std::to_string(e) + " outside 1.." +
                                  std::to_string(n));
  }
  sorted_ = std::is_sorted(entries_.begin(), entries_.end());
}

namespace {

void enumerate_rec(int remaining, int pos, std::vector<int>& current,
                   std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(current.size());
  if (pos == n - 1) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    enumerate_rec(remaining - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > std::numeric_limits<std::uint64_t>::max())
    throw std::range_error("exact integer overflow beyond 64 bits");
  return static_cast<std::uint64_t>(r);
}

} // namespace

std::vector<MultiIndex> enumerate_exponents(int m, int n) {
  if (n < 1)
    throw std::invalid_argument("enumerate_exponents: n must be >= 1");
  if (m < 0)
    throw std::invalid_argument("enumerate_exponents: m must be >= 0");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(dimension(m, n)));
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  enumerate_rec(m, 0, current, out);
  return out;
}

std::vector<IndexTuple> enumerate_tuples(int m, int n) {
  if (n < 1 || m < 0)
    throw std::invalid_argument("enumerate_tuples: need m >= 0, n >= 1");
  const std::uint64_t count = tuple_count(m, n);
  std::vector<IndexTuple> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> entries(static_cast<std::size_t>(m), 1);
  for (std::uint64_t t = 0; t < count; ++t) {
    out.emplace_back(entries, n);
    for (int k = m - 1; k >= 0; --k) {
      if (++entries[k] <= n)
        break;
      entries[k] = 1;
    }
  }
  return out;
}

std::uint64_t binomial(int top, int bottom) {
  if (bottom < 0 || top < 0 || bottom > top)
    return 0;
  bottom = std::min(bottom, top - bottom);
  std::uint64_t r = 1;
  for (int i = 1; i <= bottom; ++i) {
    // r * (top - bottom + i) is divisible by i at every step
    unsigned __int128 t = static_cast<unsigned __int128>(r) * static_cast<unsigned>(top - bottom + i);
    t /= static_cast<unsigned>(i);
    if (t > std::numeric_limits<std::uint64_t>::max())
      throw std::range_error("binomial(" + std::to_string(top) + "," + std::to_string(bottom) +
                             ") exceeds the exact 64-bit range");
    r = static_cast<std::uint64_t>(t);
  }
  return r;
}

std::uint64_t class_cardinality(const MultiIndex& alpha) {
  // product of binomials: m!/alpha! = prod_k binom(alpha_1+..+alpha_k, alpha_k)
  std::uint64_t r = 1;
  int partial = 0;
  for (int e : alpha.exponents()) {
    partial += e;
    r = checked_mul(r, binomial(partial, e));
  }
  return r;
}

IndexTuple exponent_to_tuple(const MultiIndex& alpha) {
  std::vector<int> entries;
  entries.reserve(static_cast<std::size_t>(alpha.degree()));
  for (int r = 0; r < alpha.dimension(); ++r)
    entries.insert(entries.end(), static_cast<std::size_t>(alpha[r]), r + 1);
  return IndexTuple(std::move(entries), alpha.dimension());
}

MultiIndex tuple_to_exponent(const IndexTuple& j) {
  std::vector<int> exps(static_cast<std::size_t>(j.dimension()), 0);
  for (int e : j.entries())
    ++exps[static_cast<std::size_t>(e - 1)];
  return MultiIndex(std::move(exps));
}

std::uint64_t dimension(int m, int n) {
  if (n < 1)
    throw std::invalid_argument("dimension: n must be >= 1");
  if (m < 0)
    throw std::invalid_argument("dimension: m must be >= 0");
  return binomial(n + m - 1, n - 1);
}

double log_dimension(int m, int n) {
  if (n < 1 || m < 0)
    throw std::invalid_argument("log_dimension: need m >= 0, n >= 1");
  const double top = n + m - 1;
  return std::lgamma(top + 1.0) - std::lgamma(static_cast<double>(m) + 1.0) -
         std::lgamma(static_cast<double>(n));
}

double dimension_bound_constant(int m_max, int n_max) {
  if (m_max < 1 || n_max < 1)
    throw std::invalid_argument("dimension_bound_constant: need m_max, n_max >= 1");
  double c = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      const double d = static_cast<double>(dimension(m, n));
      const double cm = std::pow(d, 1.0 / m) / (1.0 + static_cast<double>(n) / m);
      c = std::max(c, cm);
    }
  }
  if (c > std::numbers::e)
    throw std::logic_error("dimension_bound_constant: c exceeds e");
  return c;
}

std::uint64_t tuple_count(int m, int n) {
  if (n < 1 || m < 0)
    throw std::invalid_argument("tuple_count: need m >= 0, n >= 1");
  std::uint64_t r = 1;
  for (int k = 0; k < m; ++k)
    r = checked_mul(r, static_cast<std::uint64_t>(n));
  return r;
}

} // namespace bhlab
