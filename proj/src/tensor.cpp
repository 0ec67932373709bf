#include "bhlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bhlab {

MultilinearTensor::MultilinearTensor(int m, int n)
    : MultilinearTensor(m, n, std::vector<Complex>(static_cast<std::size_t>(tuple_count(m, n)))) {}

MultilinearTensor::MultilinearTensor(int m, int n, std::vector<Complex> coeffs)
    : m_(m), n_(n), coeffs_(std::move(coeffs)) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("MultilinearTensor: need m >= 1, n >= 1");
  if (coeffs_.size() != tuple_count(m, n))
    throw std::invalid_argument("MultilinearTensor: expected n^m = " +
                                std::to_string(tuple_count(m, n)) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
}

std::size_t MultilinearTensor::flat_index(const IndexTuple& i) const {
  if (i.arity() != m_ || i.dimension() != n_)
    throw std::invalid_argument("MultilinearTensor: tuple shape mismatch");
  std::size_t flat = 0;
  for (int e : i.entries())
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e - 1);
  return flat;
}

IndexTuple MultilinearTensor::tuple_at(std::size_t flat) const {
  std::vector<int> entries(static_cast<std::size_t>(m_));
  for (int k = m_ - 1; k >= 0; --k) {
    entries[k] = static_cast<int>(flat % static_cast<std::size_t>(n_)) + 1;
    flat /= static_cast<std::size_t>(n_);
  }
  return IndexTuple(std::move(entries), n_);
}

namespace {

// Flat index of the sorted representative of the class of `flat`.
std::size_t representative(std::size_t flat, int m, int n) {
  std::vector<int> digits(static_cast<std::size_t>(m));
  for (int k = m - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  std::sort(digits.begin(), digits.end());
  std::size_t r = 0;
  for (int d : digits)
    r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(d);
  return r;
}

} // namespace

bool MultilinearTensor::is_symmetric(double tol) const {
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    const std::size_t r = representative(f, m_, n_);
    if (std::abs(coeffs_[f] - coeffs_[r]) > tol)
      return false;
  }
  return true;
}

Complex MultilinearTensor::evaluate(std::span<const std::vector<Complex>> slots) const {
  if (static_cast<int>(slots.size()) != m_)
    throw std::invalid_argument("MultilinearTensor::evaluate: wrong number of slots");
  for (const auto& s : slots) {
    if (static_cast<int>(s.size()) != n_)
      throw std::invalid_argument("MultilinearTensor::evaluate: slot length != n");
  }
  Complex sum{};
  std::vector<int> digits(static_cast<std::size_t>(m_), 0);
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    Complex term = coeffs_[f];
    for (int k = 0; k < m_; ++k)
      term *= slots[k][static_cast<std::size_t>(digits[k])];
    sum += term;
    for (int k = m_ - 1; k >= 0; --k) {
      if (++digits[k] < n_)
        break;
      digits[k] = 0;
    }
  }
  return sum;
}

MultilinearTensor symmetrize(const MultilinearTensor& t) {
  // The permutation average over S_m hits every member of [i] equally often,
  // so it equals the class average.
  const int m = t.arity();
  const int n = t.dimension();
  std::map<std::size_t, std::pair<Complex, std::size_t>> classes;
  for (std::size_t f = 0; f < t.size(); ++f) {
    auto& [sum, count] = classes[representative(f, m, n)];
    sum += t[f];
    ++count;
  }
  MultilinearTensor out(m, n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const auto& [sum, count] = classes[representative(f, m, n)];
    out[f] = sum / static_cast<double>(count);
  }
  return out;
}

MultilinearTensor polynomial_to_symmetric_tensor(const PolynomialSparse& p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("polynomial_to_symmetric_tensor: polynomial must be homogeneous");
  const int m = p.homogeneous_degree().value_or(p.max_degree());
  if (m < 1)
    throw std::invalid_argument("polynomial_to_symmetric_tensor: degree must be >= 1");
  MultilinearTensor out(m, p.dimension());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const MultiIndex alpha = tuple_to_exponent(out.tuple_at(f));
    const Complex a = p.coefficient(alpha);
    if (a != Complex{})
      out[f] = a / static_cast<double>(class_cardinality(alpha));
  }
  return out;
}

PolynomialSparse symmetric_tensor_to_polynomial(const MultilinearTensor& t) {
  PolynomialSparse p(t.dimension(), t.arity());
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f] != Complex{})
      p.add(tuple_to_exponent(t.tuple_at(f)), t[f]);
  }
  return p;
}

MultilinearTensor polarize(const PolynomialSparse& p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("polarize: polynomial must be homogeneous");
  const int m = p.homogeneous_degree().value_or(p.max_degree());
  if (m < 1)
    throw std::invalid_argument("polarize: degree must be >= 1");
  if (m > 12)
    throw std::invalid_argument("polarize: m = " + std::to_string(m) +
                                " > 12 makes the 2^m m! sign sum impractical; use "
                                "polynomial_to_symmetric_tensor instead");
  const int n = p.dimension();
  double m_factorial = 1.0;
  for (int k = 2; k <= m; ++k)
    m_factorial *= k;
  const double norm = 1.0 / (std::ldexp(1.0, m) * m_factorial);

  MultilinearTensor out(m, n);
  std::map<std::size_t, Complex> by_class;
  std::vector<Complex> point(static_cast<std::size_t>(n));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t r = representative(f, m, n);
    auto it = by_class.find(r);
    if (it == by_class.end()) {
      const IndexTuple slots = out.tuple_at(r);
      Complex acc{};
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::fill(point.begin(), point.end(), Complex{});
        double sign = 1.0;
        for (int k = 0; k < m; ++k) {
          const double eps = (mask >> k) & 1u ? -1.0 : 1.0;
          sign *= eps;
          point[static_cast<std::size_t>(slots[k] - 1)] += eps;
        }
        acc += sign * p.evaluate(point);
      }
      it = by_class.emplace(r, acc * norm).first;
    }
    out[f] = it->second;
  }
  return out;
}

} // namespace bhlab
