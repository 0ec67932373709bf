#pragma once

#include <span>
#include <vector>

#include "bhlab/multiindex.hpp"
#include "bhlab/polynomial.hpp"

namespace bhlab {

/// Dense coefficient array c_i = A(e_{i_1},...,e_{i_m}) over M(m,n) of an
/// m-linear form on C^n. Flat storage, first slot most significant.
class MultilinearTensor {
public:
  MultilinearTensor(int m, int n);
  MultilinearTensor(int m, int n, std::vector<Complex> coeffs);

  int arity() const { return m_; }
  int dimension() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Complex> coefficients() const { return coeffs_; }
  Complex& operator[](std::size_t flat) { return coeffs_[flat]; }
  Complex operator[](std::size_t flat) const { return coeffs_[flat]; }
  Complex& at(const IndexTuple& i) { return coeffs_[flat_index(i)]; }
  Complex at(const IndexTuple& i) const { return coeffs_[flat_index(i)]; }

  std::size_t flat_index(const IndexTuple& i) const;
  /// 1-based tuple of a flat position.
  IndexTuple tuple_at(std::size_t flat) const;

  /// c_i == c_j whenever [i] = [j], up to `tol` in modulus.
  bool is_symmetric(double tol = 0.0) const;

  /// A(x^1,...,x^m); each slot has length n.
  Complex evaluate(std::span<const std::vector<Complex>> slots) const;

private:
  int m_;
  int n_;
  std::vector<Complex> coeffs_;
};

/// Average over all permutations of the slots (a projector).
MultilinearTensor symmetrize(const MultilinearTensor& t);

/// The symmetric tensor with A(z,...,z) = P(z): c_i = a_alpha / |i|.
/// P must be homogeneous of degree >= 1.
MultilinearTensor polynomial_to_symmetric_tensor(const PolynomialSparse& p);

/// a_alpha = sum_{i in [j]} c_i, which is |j| c_j for symmetric tensors.
PolynomialSparse symmetric_tensor_to_polynomial(const MultilinearTensor& t);

/// Symmetric m-linear form of P through sign-averaging polarization,
///   A(x^1..x^m) = 1/(2^m m!) sum_eps eps_1..eps_m P(sum_k eps_k x^k).
/// Refuses m > 12.
MultilinearTensor polarize(const PolynomialSparse& p);

} // namespace bhlab
