#pragma once

// Exponent combinatorics: Lambda(m,n) multi-indices, ordered tuples M(m,n),
// nondecreasing tuples J(m,n) and the exact counting functions that tie
// them together.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bhlab {

/// An exponent vector alpha in N_0^n with cached total degree |alpha|.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  int degree() const { return degree_; }
  int dimension() const { return static_cast<int>(exponents_.size()); }
  std::span<const int> exponents() const { return exponents_; }
  int operator[](std::size_t k) const { return exponents_[k]; }

  /// Ordering is the canonical graded-lexicographic order used everywhere:
  /// lower total degree first, then larger leading exponents first.
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// A tuple i = (i_1..i_m) with entries in 1..n (1-based, as in the external
/// formats).
class IndexTuple {
public:
  IndexTuple(std::vector<int> entries, int n);

  int arity() const { return static_cast<int>(entries_.size()); }
  int dimension() const { return n_; }
  bool sorted() const { return sorted_; }
  std::span<const int> entries() const { return entries_; }
  int operator[](std::size_t k) const { return entries_[k]; }
  bool operator==(const IndexTuple& other) const = default;

private:
  std::vector<int> entries_;
  int n_ = 1;
  bool sorted_ = true;
};

/// All alpha with |alpha| = m in graded-lexicographic order.
std::vector<MultiIndex> enumerate_exponents(int m, int n);

/// All tuples of M(m,n) in lexicographic order (first slot most significant).
std::vector<IndexTuple> enumerate_tuples(int m, int n);

/// m!/alpha!, the size of the permutation class [j] of the tuple of alpha.
/// Exact; throws std::range_error if the value does not fit 64 bits.
std::uint64_t class_cardinality(const MultiIndex& alpha);

/// alpha -> j = (1,..,1,2,..,2,...) in J(m,n).
IndexTuple exponent_to_tuple(const MultiIndex& alpha);

/// j -> alpha with alpha_r = #{k : j_k = r}. Unsorted tuples are accepted
/// and land on the exponent of their class.
MultiIndex tuple_to_exponent(const IndexTuple& j);

/// binom(n+m-1, n-1), exact. Throws std::range_error on 64-bit overflow.
std::uint64_t dimension(int m, int n);

/// Exact binomial coefficient with overflow detection.
std::uint64_t binomial(int top, int bottom);

/// log binom(n+m-1, n-1) in floating point, for bound pipelines that run far
/// beyond the exact-integer range.
double log_dimension(int m, int n);

/// Smallest c with binom(n+m-1,n-1) <= c^m (1+n/m)^m for 1<=m<=m_max,
/// 1<=n<=n_max. Throws std::logic_error if the result exceeds e.
double dimension_bound_constant(int m_max, int n_max);

/// Number of M(m,n) tuples, n^m, exact.
std::uint64_t tuple_count(int m, int n);

} // namespace bhlab
