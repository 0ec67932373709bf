#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bhlab/multiindex.hpp"

namespace bhlab {

using Complex = std::complex<double>;

/// Sparse polynomial sum_alpha a_alpha z^alpha on C^n. Zero coefficients are
/// never stored; the empty map is the zero polynomial.
class PolynomialSparse {
public:
  using TermMap = std::map<MultiIndex, Complex>;

  explicit PolynomialSparse(int n, std::optional<int> homogeneous_degree = std::nullopt);

  int dimension() const { return n_; }
  std::optional<int> homogeneous_degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Sets (or erases, when c == 0) the coefficient of alpha.
  void set(const MultiIndex& alpha, Complex c);
  void add(const MultiIndex& alpha, Complex c);
  Complex coefficient(const MultiIndex& alpha) const;

  /// Largest total degree among stored terms (0 for the zero polynomial).
  int max_degree() const;
  /// True if every stored term has the same total degree (vacuous for zero).
  bool is_homogeneous() const;

  Complex evaluate(std::span<const Complex> z) const;

private:
  int n_;
  std::optional<int> degree_;
  TermMap terms_;
};

/// z^e by repeated squaring.
Complex ipow(Complex z, int e);

struct CoefficientNormReport {
  double q = 1.0;
  double value = 0.0;
  std::size_t term_count = 0;
};

/// (sum |a_alpha|^q)^{1/q}; q = +inf gives max |a_alpha|. q < 1 throws.
CoefficientNormReport coefficient_lq_norm(const PolynomialSparse& p, double q);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// The Bohnenblust-Hille exponent 2m/(m+1), reduced.
Rational bh_exponent(int m);

enum class Ensemble { steinhaus, gaussian, signs };
Ensemble parse_ensemble(std::string_view name);
std::string_view ensemble_name(Ensemble e);

/// Full-support random m-homogeneous polynomial over Lambda(m,n).
/// steinhaus: uniform unimodular; gaussian: standard complex normal
/// (E|a|^2 = 1); signs: uniform +-1.
PolynomialSparse random_polynomial(int m, int n, Ensemble ensemble, std::uint64_t seed);

/// Random polynomial with full support on all degrees 0..max_degree.
PolynomialSparse random_graded_polynomial(int max_degree, int n, Ensemble ensemble,
                                          std::uint64_t seed);

/// a_alpha -> a_alpha * prod w_k^{alpha_k}, i.e. z -> P(w o z).
PolynomialSparse scale_variables(const PolynomialSparse& p, std::span<const Complex> w);

/// Coefficients in a flat array for hot loops: term t has exponents
/// exps[t*n .. t*n+n) and coefficient coeffs[t].
struct DenseMonomials {
  int n = 0;
  int max_exponent = 0;
  std::vector<int> exps;
  std::vector<Complex> coeffs;

  explicit DenseMonomials(const PolynomialSparse& p);
  std::size_t size() const { return coeffs.size(); }
};

} // namespace bhlab
