#include "bhlab/bh.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "bhlab/multiindex.hpp"
#include "bhlab/seeding.hpp"
#include "hill_climb.hpp"

namespace bhlab {

double log_polarization_factor(int m) {
  if (m < 0)
    throw std::invalid_argument("log_polarization_factor: m must be >= 0");
  if (m == 0)
    return 0.0;
  return m * std::log(static_cast<double>(m)) - std::lgamma(m + 1.0);
}

double log_step4(int m) {
  if (m < 1)
    throw std::invalid_argument("log_step4: m must be >= 1");
  return 0.5 * (m - 1.0) * std::numbers::ln2 + 0.5 * std::log(static_cast<double>(m)) +
         log_polarization_factor(m);
}

ConstantTableRow constant_row(int m) {
  if (m < 1)
    throw std::invalid_argument("constant_row: m must be >= 1");
  const double dm = m;
  const double ln2 = std::numbers::ln2;
  const double log_fact = std::lgamma(dm + 1.0);
  // shared tail m^{m/2} (m+1)^{(m+1)/2} / (2^m (m!)^{(m+1)/2m})
  const double log_tail = 0.5 * dm * std::log(dm) + 0.5 * (dm + 1.0) * std::log(dm + 1.0) -
                          dm * ln2 - (dm + 1.0) / (2.0 * dm) * log_fact;
  ConstantTableRow row;
  row.m = m;
  row.bhh_original = std::exp((dm + 1.0) / (2.0 * dm) * std::log(dm) + 0.5 * (dm - 1.0) * ln2);
  row.davie_kaijser = std::exp(0.5 * (dm - 1.0) * ln2);
  row.harris = std::exp(0.5 * (dm - 1.0) * ln2 + log_tail);
  row.queffelec = std::exp((dm - 1.0) * std::log(2.0 / std::sqrt(std::numbers::pi)) + log_tail);
  row.step4 = std::exp(log_step4(m));
  return row;
}

std::vector<ConstantTableRow> constant_table(int m_max) {
  if (m_max < 1)
    throw std::invalid_argument("constant_table: m_max must be >= 1");
  std::vector<ConstantTableRow> rows;
  for (int m = 1; m <= m_max; ++m)
    rows.push_back(constant_row(m));
  return rows;
}

namespace {

CoefficientNormReport tensor_lq_norm(const MultilinearTensor& a, double q) {
  CoefficientNormReport r;
  r.q = q;
  double s = 0.0;
  for (const auto& c : a.coefficients()) {
    if (c == Complex{})
      continue;
    ++r.term_count;
    s += std::pow(std::abs(c), q);
  }
  r.value = std::pow(s, 1.0 / q);
  return r;
}

int required_degree(const PolynomialSparse& p, const char* who) {
  if (p.is_zero())
    throw std::invalid_argument(std::string(who) + ": zero polynomial");
  if (!p.is_homogeneous())
    throw std::invalid_argument(std::string(who) + ": polynomial must be homogeneous");
  const int m = p.homogeneous_degree().value_or(p.max_degree());
  if (m < 1)
    throw std::invalid_argument(std::string(who) + ": degree must be >= 1");
  return m;
}

RatioResult finish(CoefficientNormReport num, SupResult sup) {
  RatioResult r;
  r.numerator = num;
  r.denominator = std::move(sup.certificate);
  r.argmax_phases = std::move(sup.argmax_phases);
  r.ratio = r.numerator.value / r.denominator.lower;
  r.conservative_ratio = r.numerator.value / r.denominator.upper;
  return r;
}

RatioResult poly_ratio(const PolynomialSparse& p, const OptimizerSpec& opt,
                       const std::vector<std::vector<double>>& warm, bool sidon) {
  const int m = required_degree(p, sidon ? "sidon_ratio" : "bh_ratio_poly");
  const double q = sidon ? 1.0 : bh_exponent(m).value();
  RatioResult r = finish(coefficient_lq_norm(p, q), sup_norm_polydisc_detailed(p, opt, warm));
  r.polynomial = p;
  return r;
}

RatioResult tensor_ratio(const MultilinearTensor& a, const OptimizerSpec& opt,
                         const std::vector<std::vector<double>>& warm) {
  bool zero = true;
  for (const auto& c : a.coefficients())
    zero = zero && c == Complex{};
  if (zero)
    throw std::invalid_argument("bh_ratio_multilinear: zero tensor");
  RatioResult r = finish(tensor_lq_norm(a, bh_exponent(a.arity()).value()),
                         sup_norm_multilinear_detailed(a, opt, warm));
  r.tensor = a;
  return r;
}

} // namespace

RatioResult bh_ratio_poly(const PolynomialSparse& p, const OptimizerSpec& opt) {
  return poly_ratio(p, opt, {}, false);
}

RatioResult sidon_ratio(const PolynomialSparse& p, const OptimizerSpec& opt) {
  return poly_ratio(p, opt, {}, true);
}

RatioResult bh_ratio_multilinear(const MultilinearTensor& a, const OptimizerSpec& opt) {
  return tensor_ratio(a, opt, {});
}

double blei_rhs(const MultilinearTensor& c) {
  const int m = c.arity();
  const int n = c.dimension();
  // sq[k][j]: sum of |c_i|^2 over tuples with i_k = j
  std::vector<double> sq(static_cast<std::size_t>(m * n), 0.0);
  for (std::size_t f = 0; f < c.size(); ++f) {
    const double v = std::norm(c[f]);
    if (v == 0.0)
      continue;
    std::size_t rest = f;
    for (int k = m - 1; k >= 0; --k) {
      sq[static_cast<std::size_t>(k * n) + rest % static_cast<std::size_t>(n)] += v;
      rest /= static_cast<std::size_t>(n);
    }
  }
  double log_rhs = 0.0;
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      s += std::sqrt(sq[static_cast<std::size_t>(k * n + j)]);
    if (s == 0.0)
      return 0.0;
    log_rhs += std::log(s);
  }
  return std::exp(log_rhs / m);
}

MarginReport blei_check(const MultilinearTensor& c) {
  MarginReport r;
  r.lhs = tensor_lq_norm(c, bh_exponent(c.arity()).value()).value;
  r.rhs = blei_rhs(c);
  r.margin = r.rhs - r.lhs;
  return r;
}

MarginReport holder_step_check(const PolynomialSparse& p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("holder_step_check: polynomial must be homogeneous");
  MarginReport r;
  r.lhs = coefficient_lq_norm(p, 1.0).value;
  if (p.is_zero())
    return r;
  const int m = p.homogeneous_degree().value_or(p.max_degree());
  if (m == 0) {
    r.rhs = r.lhs;
    return r;
  }
  const double factor = std::exp((m - 1.0) / (2.0 * m) * log_dimension(m, p.dimension()));
  r.rhs = factor * coefficient_lq_norm(p, bh_exponent(m).value()).value;
  r.margin = r.rhs - r.lhs;
  return r;
}

SearchObjective parse_objective(std::string_view name) {
  if (name == "bh_poly" || name == "bh-poly")
    return SearchObjective::bh_poly;
  if (name == "bh_multilinear" || name == "bh-multilinear")
    return SearchObjective::bh_multilinear;
  if (name == "sidon")
    return SearchObjective::sidon;
  throw std::invalid_argument("unknown search objective '" + std::string(name) + "'");
}

std::string_view objective_name(SearchObjective o) {
  switch (o) {
  case SearchObjective::bh_poly:
    return "bh_poly";
  case SearchObjective::bh_multilinear:
    return "bh_multilinear";
  case SearchObjective::sidon:
    return "sidon";
  }
  return "?";
}

SearchBudget parse_budget(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
      throw std::invalid_argument("budget: expected RxI with positive integers, got '" +
                                  std::string(text) + "'");
    return v;
  };
  SearchBudget b;
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    b.restarts = parse_int(text);
  } else {
    b.restarts = parse_int(text.substr(0, x));
    b.iterations = parse_int(text.substr(x + 1));
  }
  return b;
}

RatioResult extremal_search(SearchObjective objective, int m, int n, const SearchBudget& budget,
                            std::uint64_t seed, const SearchOptions& options) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("extremal_search: need m >= 1, n >= 1");
  if (budget.restarts < 1 || budget.iterations < 0)
    throw std::invalid_argument("extremal_search: invalid budget");
  const bool multilinear = objective == SearchObjective::bh_multilinear;
  const std::uint64_t size = multilinear ? tuple_count(m, n) : dimension(m, n);
  if (size > kSearchSizeLimit)
    throw std::range_error("extremal_search: " + std::to_string(size) +
                           " coefficients exceed the search limit " +
                           std::to_string(kSearchSizeLimit));
  const std::vector<MultiIndex> exponents = multilinear ? std::vector<MultiIndex>{}
                                                        : enumerate_exponents(m, n);
  auto to_polynomial = [&](const std::vector<Complex>& c) {
    PolynomialSparse p(n, m);
    for (std::size_t k = 0; k < c.size(); ++k)
      p.set(exponents[k], c[k]);
    return p;
  };
  auto evaluate = [&](const std::vector<Complex>& c, const OptimizerSpec& opt,
                      const std::vector<std::vector<double>>& warm) {
    if (multilinear)
      return tensor_ratio(MultilinearTensor(m, n, c), opt, warm);
    return poly_ratio(to_polynomial(c), opt, warm, objective == SearchObjective::sidon);
  };

  std::vector<RatioResult> results(static_cast<std::size_t>(budget.restarts));
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (int r = 0; r < budget.restarts; ++r) {
    const std::uint64_t traj_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(traj_seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> start(static_cast<std::size_t>(size));
    for (auto& c : start)
      c = std::polar(1.0, phase(rng));

    OptimizerSpec inner{options.inner_restarts, 100, 1e-8, derive_seed(traj_seed, 1), 1};
    detail::ScoreFn score = [&](const std::vector<Complex>& c, const std::vector<double>& warm) {
      std::vector<std::vector<double>> starts;
      if (!warm.empty())
        starts.push_back(warm);
      RatioResult res = evaluate(c, inner, starts);
      return detail::Scored{res.ratio, std::move(res.argmax_phases)};
    };
    const auto climb = detail::hill_climb(std::move(start), {}, budget.iterations,
                                          derive_seed(traj_seed, 2), score);
    OptimizerSpec final_opt{options.final_restarts, 300, 1e-8, derive_seed(traj_seed, 3), 1};
    results[r] = evaluate(climb.coeffs, final_opt, {climb.best.argmax});
  }
  // Incumbent: z_1^m (or e_1 x ... x e_1) has ratio exactly 1, a value every
  // objective's maximum attains. Trajectories must beat it to be reported.
  std::vector<Complex> unit(static_cast<std::size_t>(size));
  unit[0] = 1.0;
  RatioResult best = evaluate(unit, OptimizerSpec{1, 10, 1e-8, seed, 1}, {});
  best.trajectory = -1;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].ratio > best.ratio) {
      best = std::move(results[r]);
      best.trajectory = static_cast<int>(r);
    }
  }
  return best;
}

} // namespace bhlab
