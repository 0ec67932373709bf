#include "bhlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace bhlab {

PolynomialSparse::PolynomialSparse(int n, std::optional<int> homogeneous_degree)
    : n_(n), degree_(homogeneous_degree) {
  if (n < 1)
    throw std::invalid_argument("PolynomialSparse: n must be >= 1");
  if (degree_ && *degree_ < 0)
    throw std::invalid_argument("PolynomialSparse: negative homogeneous degree");
}

void PolynomialSparse::set(const MultiIndex& alpha, Complex c) {
  if (alpha.dimension() != n_)
    throw std::invalid_argument("PolynomialSparse::set: exponent length " +
                                std::to_string(alpha.dimension()) + " != n = " + std::to_string(n_));
  if (degree_ && alpha.degree() != *degree_)
    throw std::invalid_argument("PolynomialSparse::set: term degree " +
                                std::to_string(alpha.degree()) + " violates homogeneous degree " +
                                std::to_string(*degree_));
  if (c == Complex{})
    terms_.erase(alpha);
  else
    terms_[alpha] = c;
}

void PolynomialSparse::add(const MultiIndex& alpha, Complex c) { set(alpha, coefficient(alpha) + c); }

Complex PolynomialSparse::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

int PolynomialSparse::max_degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_)
    d = std::max(d, alpha.degree());
  return d;
}

bool PolynomialSparse::is_homogeneous() const {
  if (terms_.empty())
    return true;
  const int d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

Complex ipow(Complex z, int e) {
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1)
      result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

Complex PolynomialSparse::evaluate(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != n_)
    throw std::invalid_argument("evaluate: point has length " + std::to_string(z.size()) +
                                ", polynomial has n = " + std::to_string(n_));
  Complex sum{};
  for (const auto& [alpha, c] : terms_) {
    Complex mono = c;
    for (int k = 0; k < n_; ++k) {
      if (alpha[k] != 0)
        mono *= ipow(z[k], alpha[k]);
    }
    sum += mono;
  }
  return sum;
}

CoefficientNormReport coefficient_lq_norm(const PolynomialSparse& p, double q) {
  if (!(q >= 1.0))
    throw std::invalid_argument("coefficient_lq_norm: q must be >= 1");
  CoefficientNormReport r{q, 0.0, p.term_count()};
  if (p.is_zero())
    return r;
  if (std::isinf(q)) {
    for (const auto& [alpha, c] : p.terms())
      r.value = std::max(r.value, std::abs(c));
    return r;
  }
  // scale by the max modulus to keep |a|^q in range
  double scale = 0.0;
  for (const auto& [alpha, c] : p.terms())
    scale = std::max(scale, std::abs(c));
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms())
    s += std::pow(std::abs(c) / scale, q);
  r.value = scale * std::pow(s, 1.0 / q);
  return r;
}

Rational bh_exponent(int m) {
  if (m < 1)
    throw std::invalid_argument("bh_exponent: m must be >= 1");
  const std::int64_t num = 2 * static_cast<std::int64_t>(m);
  const std::int64_t den = static_cast<std::int64_t>(m) + 1;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Ensemble parse_ensemble(std::string_view name) {
  if (name == "steinhaus")
    return Ensemble::steinhaus;
  if (name == "gaussian")
    return Ensemble::gaussian;
  if (name == "signs")
    return Ensemble::signs;
  throw std::invalid_argument("unknown ensemble '" + std::string(name) + "'");
}

std::string_view ensemble_name(Ensemble e) {
  switch (e) {
  case Ensemble::steinhaus:
    return "steinhaus";
  case Ensemble::gaussian:
    return "gaussian";
  case Ensemble::signs:
    return "signs";
  }
  return "?";
}

namespace {

Complex draw(Ensemble ensemble, std::mt19937_64& rng) {
  switch (ensemble) {
  case Ensemble::steinhaus: {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, phase(rng));
  }
  case Ensemble::gaussian: {
    std::normal_distribution<double> g(0.0, std::numbers::sqrt2 / 2.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
  }
  case Ensemble::signs:
    return (rng() & 1ULL) ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
  }
  return {};
}

} // namespace

PolynomialSparse random_polynomial(int m, int n, Ensemble ensemble, std::uint64_t seed) {
  PolynomialSparse p(n, m);
  std::mt19937_64 rng(seed);
  for (const auto& alpha : enumerate_exponents(m, n))
    p.set(alpha, draw(ensemble, rng));
  return p;
}

PolynomialSparse random_graded_polynomial(int max_degree, int n, Ensemble ensemble,
                                          std::uint64_t seed) {
  PolynomialSparse p(n);
  std::mt19937_64 rng(seed);
  for (int m = 0; m <= max_degree; ++m) {
    for (const auto& alpha : enumerate_exponents(m, n))
      p.set(alpha, draw(ensemble, rng));
  }
  return p;
}

PolynomialSparse scale_variables(const PolynomialSparse& p, std::span<const Complex> w) {
  if (static_cast<int>(w.size()) != p.dimension())
    throw std::invalid_argument("scale_variables: weight length does not match n");
  PolynomialSparse out(p.dimension(), p.homogeneous_degree());
  for (const auto& [alpha, c] : p.terms()) {
    Complex f = c;
    for (int k = 0; k < p.dimension(); ++k)
      f *= ipow(w[k], alpha[k]);
    out.set(alpha, f);
  }
  return out;
}

DenseMonomials::DenseMonomials(const PolynomialSparse& p) : n(p.dimension()) {
  exps.reserve(p.term_count() * static_cast<std::size_t>(n));
  coeffs.reserve(p.term_count());
  for (const auto& [alpha, c] : p.terms()) {
    for (int e : alpha.exponents()) {
      exps.push_back(e);
      max_exponent = std::max(max_exponent, e);
    }
    coeffs.push_back(c);
  }
}

} // namespace bhlab
