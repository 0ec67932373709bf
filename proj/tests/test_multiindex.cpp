#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "bhlab/multiindex.hpp"

using namespace bhlab;

namespace {

// Every tuple of M(m,n) as a 1-based vector, by odometer.
std::vector<std::vector<int>> all_tuples(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(m), 1);
  while (true) {
    out.push_back(t);
    int k = m - 1;
    while (k >= 0 && t[k] == n) {
      t[k] = 1;
      --k;
    }
    if (k < 0)
      break;
    ++t[k];
  }
  return out;
}

// Distinct permutations of the multiset, counted by next_permutation.
std::uint64_t permutation_count(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  std::uint64_t count = 0;
  do
    ++count;
  while (std::next_permutation(v.begin(), v.end()));
  return count;
}

std::uint64_t ipow_u64(int base, int e) {
  std::uint64_t r = 1;
  for (int k = 0; k < e; ++k)
    r *= static_cast<std::uint64_t>(base);
  return r;
}

} // namespace

TEST_CASE("enumerate_exponents small cases") {
  const auto e22 = enumerate_exponents(2, 2);
  REQUIRE(e22.size() == 3);
  CHECK(e22[0] == MultiIndex({2, 0}));
  CHECK(e22[1] == MultiIndex({1, 1}));
  CHECK(e22[2] == MultiIndex({0, 2}));

  const auto e05 = enumerate_exponents(0, 5);
  REQUIRE(e05.size() == 1);
  CHECK(e05[0] == MultiIndex({0, 0, 0, 0, 0}));

  CHECK_THROWS_AS(enumerate_exponents(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_exponents(-1, 2), std::invalid_argument);
}

TEST_CASE("enumeration agrees with classes of all ordered tuples") {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const auto exps = enumerate_exponents(m, n);
      CHECK(exps.size() == dimension(m, n));
      if (ipow_u64(n, m) > 200000)
        continue;
      std::set<std::vector<int>> classes;
      for (auto t : all_tuples(m, n)) {
        std::sort(t.begin(), t.end());
        classes.insert(t);
      }
      CHECK(classes.size() == exps.size());
    }
  }
  CHECK(enumerate_exponents(3, 3).size() == 10);
}

TEST_CASE("enumeration is sorted, duplicate free and graded") {
  for (int m = 0; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) {
      const auto exps = enumerate_exponents(m, n);
      for (const auto& a : exps) {
        CHECK(a.degree() == m);
        CHECK(a.dimension() == n);
      }
      for (std::size_t k = 1; k < exps.size(); ++k)
        CHECK(exps[k - 1] < exps[k]);
    }
  }
  CHECK(MultiIndex({1, 0}) < MultiIndex({2, 0}));
  CHECK(MultiIndex({2, 0, 0}) < MultiIndex({1, 1, 0}));
}

TEST_CASE("class_cardinality") {
  CHECK(class_cardinality(MultiIndex({1, 1, 1})) == 6);
  CHECK(class_cardinality(MultiIndex({5, 0, 0, 0})) == 1);
  CHECK(class_cardinality(MultiIndex({2, 1})) == 3);
  CHECK(class_cardinality(MultiIndex({0, 0})) == 1);
  // 20!/1 fits in 64 bits and must be exact
  CHECK(class_cardinality(MultiIndex(std::vector<int>(20, 1))) == 2432902008176640000ULL);
  CHECK(class_cardinality(MultiIndex({10, 10})) == 184756ULL);
  CHECK_THROWS_AS(class_cardinality(MultiIndex(std::vector<int>(21, 1))), std::range_error);
}

TEST_CASE("class_cardinality matches permutation counts") {
  for (int m = 1; m <= 7; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& a : enumerate_exponents(m, n)) {
        const auto j = exponent_to_tuple(a);
        std::vector<int> v(j.entries().begin(), j.entries().end());
        CHECK(class_cardinality(a) == permutation_count(v));
      }
    }
  }
}

TEST_CASE("class cardinalities partition ordered tuples") {
  for (int m = 1; m <= 7; ++m) {
    for (int n = 1; n <= 7; ++n) {
      std::uint64_t total = 0;
      for (const auto& a : enumerate_exponents(m, n))
        total += class_cardinality(a);
      CHECK(total == ipow_u64(n, m));
      CHECK(tuple_count(m, n) == ipow_u64(n, m));
    }
  }
}

TEST_CASE("exponent and tuple correspondence") {
  const auto j = exponent_to_tuple(MultiIndex({2, 0, 1}));
  CHECK(std::vector<int>(j.entries().begin(), j.entries().end()) == std::vector<int>{1, 1, 3});
  CHECK(j.sorted());
  CHECK(j.dimension() == 3);
  CHECK(exponent_to_tuple(MultiIndex({0, 0, 0})).arity() == 0);

  // unsorted tuples land on their class
  CHECK(tuple_to_exponent(IndexTuple({3, 1, 1}, 3)) == MultiIndex({2, 0, 1}));
  CHECK_FALSE(IndexTuple({3, 1, 1}, 3).sorted());
  CHECK_THROWS_AS(IndexTuple({0, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(IndexTuple({4}, 3), std::invalid_argument);

  for (int m = 0; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      for (const auto& a : enumerate_exponents(m, n)) {
        const auto t = exponent_to_tuple(a);
        CHECK(t.sorted());
        CHECK(tuple_to_exponent(t) == a);
        CHECK(exponent_to_tuple(tuple_to_exponent(t)) == t);
      }
    }
  }
}

TEST_CASE("enumerate_tuples is lexicographic over M(m,n)") {
  const auto ts = enumerate_tuples(2, 3);
  REQUIRE(ts.size() == 9);
  CHECK(ts[0] == IndexTuple({1, 1}, 3));
  CHECK(ts[1] == IndexTuple({1, 2}, 3));
  CHECK(ts[8] == IndexTuple({3, 3}, 3));
  const auto brute = all_tuples(3, 2);
  const auto listed = enumerate_tuples(3, 2);
  REQUIRE(listed.size() == brute.size());
  for (std::size_t k = 0; k < brute.size(); ++k)
    CHECK(std::vector<int>(listed[k].entries().begin(), listed[k].entries().end()) == brute[k]);
}

TEST_CASE("dimension and binomials") {
  CHECK(dimension(2, 3) == 6);
  CHECK(dimension(2, 3) == enumerate_exponents(2, 3).size());
  for (int n = 1; n <= 50; ++n)
    CHECK(dimension(1, n) == static_cast<std::uint64_t>(n));
  CHECK(dimension(0, 7) == 1);
  CHECK_THROWS_AS(dimension(2, 0), std::invalid_argument);

  // Pascal's rule as an oracle
  for (int top = 1; top <= 62; ++top) {
    for (int b = 1; b < top; ++b)
      CHECK(binomial(top, b) == binomial(top - 1, b - 1) + binomial(top - 1, b));
  }
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK_THROWS_AS(dimension(40, 40), std::range_error);
  CHECK_THROWS_AS(binomial(70, 35), std::range_error);

  for (int m = 1; m <= 10; ++m) {
    for (int n = 1; n <= 10; ++n)
      CHECK(log_dimension(m, n) == doctest::Approx(std::log(static_cast<double>(dimension(m, n)))).epsilon(1e-12));
  }
  CHECK(std::isfinite(log_dimension(500, 4096)));
}

TEST_CASE("dimension bound constant") {
  const double c = dimension_bound_constant(12, 12);
  CHECK(c <= std::numbers::e);
  CHECK(c >= 1.0 / 2.0);
  // c is admissible on the range and tight at some pair
  double tightest = -1e300;
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      const double rhs = m * std::log(c) + m * std::log1p(static_cast<double>(n) / m);
      const double lhs = log_dimension(m, n);
      CHECK(lhs <= rhs + 1e-12);
      tightest = std::max(tightest, lhs - rhs);
    }
  }
  CHECK(std::abs(tightest) < 1e-12);
  // the constant grows toward e across larger ranges but never exceeds it
  CHECK(dimension_bound_constant(30, 30) <= std::numbers::e);
  CHECK(dimension_bound_constant(30, 30) >= c);
}
