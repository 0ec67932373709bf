#include "bhlab/bohr.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bhlab/bh.hpp"
#include "bhlab/multiindex.hpp"
#include "bhlab/seeding.hpp"
#include "hill_climb.hpp"

namespace bhlab {

BallSpec::BallSpec(int n_, double p_) : n(n_), p(p_) {
  if (n < 1)
    throw std::invalid_argument("BallSpec: n must be >= 1");
  if (!(p >= 1.0))
    throw std::invalid_argument("BallSpec: p must be >= 1");
}

double parse_p(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf")
    return kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(v >= 1.0) || std::isinf(v))
    throw std::invalid_argument("p must be a real >= 1 or 'inf', got '" + std::string(text) + "'");
  return v;
}

std::string format_p(double p) {
  if (std::isinf(p))
    return "inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << p;
  return os.str();
}

std::string_view kind_name(BohrKind k) {
  switch (k) {
  case BohrKind::per_function:
    return "per-function";
  case BohrKind::family_upper:
    return "family-upper";
  case BohrKind::theoretical_lower:
    return "theoretical-lower";
  }
  return "?";
}

double majorant(const PolynomialSparse& f, double r, const BallSpec& ball) {
  if (f.dimension() != ball.n)
    throw std::invalid_argument("majorant: polynomial dimension does not match the ball");
  double s = 0.0;
  for (const auto& [alpha, c] : f.terms())
    s += std::abs(c) * std::pow(r, alpha.degree()) * monomial_sup_lp(alpha, ball.p);
  return s;
}

BohrResult per_function_radius(const PolynomialSparse& f, const BallSpec& ball,
                               const OptimizerSpec& opt) {
  return per_function_radius(BohrCandidate{f, std::nullopt, {}, "polynomial"}, ball, opt);
}

BohrResult per_function_radius(const BohrCandidate& c, const BallSpec& ball,
                               const OptimizerSpec& opt) {
  if (c.f.is_zero())
    throw std::invalid_argument("per_function_radius: zero function");
  if (c.f.dimension() != ball.n)
    throw std::invalid_argument("per_function_radius: polynomial dimension does not match the ball");
  BohrResult out;
  out.kind = BohrKind::per_function;
  out.witness = c.f;
  out.witness_label = c.label;
  if (c.known_sup) {
    out.sup = NormCertificate::exact(*c.known_sup, "known");
  } else {
    out.sup = std::isinf(ball.p) ? sup_norm_polydisc(c.f, opt) : sup_norm_lp_ball(c.f, ball.p, opt);
  }
  const double target = out.sup.lower * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  auto fits = [&](double r) {
    double g = majorant(c.f, r, ball);
    if (c.tail)
      g += c.tail(r);
    return g <= target;
  };
  if (fits(1.0)) {
    out.radius = 1.0;
    return out;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
    ++out.iterations;
  }
  out.radius = lo;
  return out;
}

BohrCandidate moebius_candidate(double a, int degree, int n) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("moebius_candidate: need 0 < a < 1");
  if (degree < 1 || n < 1)
    throw std::invalid_argument("moebius_candidate: need degree >= 1, n >= 1");
  BohrCandidate c{PolynomialSparse(n), 1.0, {}, ""};
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  c.f.set(MultiIndex(e), a);
  double ak = 1.0; // a^{k-1}
  for (int k = 1; k <= degree; ++k) {
    e[0] = k;
    c.f.set(MultiIndex(e), -(1.0 - a * a) * ak);
    ak *= a;
  }
  const double aD = std::pow(a, degree);
  c.tail = [a, aD, degree](double r) {
    return (1.0 - a * a) * aD * std::pow(r, degree + 1) / (1.0 - a * r);
  };
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "moebius(a=" << a << ",degree=" << degree << ")";
  c.label = os.str();
  return c;
}

BohrFamily parse_family(std::string_view name) {
  if (name == "moebius" || name == "moebius-products")
    return BohrFamily::moebius;
  if (name == "random-graded" || name == "random_graded")
    return BohrFamily::random_graded;
  if (name == "search-witnesses" || name == "search_witnesses")
    return BohrFamily::search_witnesses;
  if (name == "coordinate")
    return BohrFamily::coordinate;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(BohrFamily f) {
  switch (f) {
  case BohrFamily::moebius:
    return "moebius";
  case BohrFamily::random_graded:
    return "random-graded";
  case BohrFamily::search_witnesses:
    return "search-witnesses";
  case BohrFamily::coordinate:
    return "coordinate";
  }
  return "?";
}

std::vector<BohrCandidate> build_family(const FamilySpec& spec, const BallSpec& ball, int threads) {
  std::vector<BohrCandidate> out;
  switch (spec.family) {
  case BohrFamily::moebius:
    for (double a : spec.moebius_a)
      out.push_back(moebius_candidate(a, spec.degree, ball.n));
    break;
  case BohrFamily::coordinate: {
    std::vector<int> e(static_cast<std::size_t>(ball.n), 0);
    e[0] = 1;
    PolynomialSparse f(ball.n, 1);
    f.set(MultiIndex(e), 1.0);
    out.push_back({f, std::nullopt, {}, "z_1"});
    break;
  }
  case BohrFamily::random_graded:
    for (int i = 0; i < spec.count; ++i) {
      out.push_back({random_graded_polynomial(spec.degree, ball.n, Ensemble::steinhaus,
                                              derive_seed(spec.seed, static_cast<std::uint64_t>(i))),
                     std::nullopt, {}, "random-graded#" + std::to_string(i)});
    }
    break;
  case BohrFamily::search_witnesses: {
    SearchOptions so;
    so.threads = threads;
    auto r = extremal_search(SearchObjective::sidon, spec.degree, ball.n,
                             {spec.count, spec.search_iterations}, spec.seed, so);
    out.push_back({*r.polynomial, std::nullopt, {}, "sidon-witness(m=" + std::to_string(spec.degree) + ")"});
    break;
  }
  }
  return out;
}

BohrResult bohr_upper_bound(const BallSpec& ball, const std::vector<BohrCandidate>& candidates,
                            const OptimizerSpec& opt) {
  if (candidates.empty())
    throw std::invalid_argument("bohr_upper_bound: empty candidate family");
  for (const auto& c : candidates) {
    if (c.f.is_zero() || c.f.dimension() != ball.n)
      throw std::invalid_argument("bohr_upper_bound: candidate '" + c.label + "' is invalid");
  }
  std::vector<BohrResult> results(candidates.size());
  OptimizerSpec inner = opt;
  inner.threads = 1;
  const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
  const int count = static_cast<int>(candidates.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (int i = 0; i < count; ++i)
    results[i] = per_function_radius(candidates[i], ball, inner);
  std::size_t best = 0;
  int iterations = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    iterations += results[i].iterations;
    if (results[i].radius < results[best].radius)
      best = i;
  }
  BohrResult out = std::move(results[best]);
  out.kind = BohrKind::family_upper;
  out.iterations = iterations;
  for (const auto& c : candidates)
    out.moebius_slice = out.moebius_slice || c.label.rfind("moebius", 0) == 0;
  out.factors["candidates"] = static_cast<double>(candidates.size());
  return out;
}

BohrResult bohr_upper_bound(const BallSpec& ball, const FamilySpec& family, const OptimizerSpec& opt) {
  return bohr_upper_bound(ball, build_family(family, ball, opt.threads), opt);
}

std::string_view route_name(ChiRoute r) {
  switch (r) {
  case ChiRoute::exact:
    return "exact";
  case ChiRoute::holder_sidon:
    return "holder-sidon";
  case ChiRoute::gl_lambda_chain:
    return "gl-lambda-chain";
  }
  return "?";
}

double log_projection_bound(int m, int n, double p) {
  if (m < 0 || n < 1 || !(p >= 1.0))
    throw std::invalid_argument("projection_bound: need m >= 0, n >= 1, p >= 1");
  if (m == 0)
    return 0.0;
  const double sqrt_dim = 0.5 * log_dimension(m, n);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = 1.0 - inv_p;
  const double c = m + n <= 64 ? dimension_bound_constant(m, n) : std::numbers::e;
  const double d_route =
      m * inv_p + m * inv_q * (std::log(c) + std::log1p(static_cast<double>(n) / m));
  return std::min(sqrt_dim, d_route);
}

double projection_bound(int m, int n, double p) { return std::exp(log_projection_bound(m, n, p)); }

ChiBound chi_upper_bound(int m, int n, double p) {
  if (m < 1 || n < 1 || !(p >= 1.0))
    throw std::invalid_argument("chi_upper_bound: need m >= 1, n >= 1, p >= 1");
  ChiBound b;
  b.m = m;
  b.n = n;
  b.p = p;
  if (m == 1 || n == 1) {
    // linear forms: 1-unconditional basis; one variable: one monomial per degree
    b.route = ChiRoute::exact;
    b.upper = 1.0;
    b.log_upper = 0.0;
    b.components["exact"] = 1.0;
    return b;
  }
  double best = std::numeric_limits<double>::infinity();
  if (std::isinf(p)) {
    const double log_dim_factor = (m - 1.0) / (2.0 * m) * log_dimension(m, n);
    const double log_s4 = log_step4(m);
    b.components["holder_sidon.dimension_factor"] = std::exp(log_dim_factor);
    b.components["holder_sidon.step4"] = std::exp(log_s4);
    b.components["holder_sidon.value"] = std::exp(log_dim_factor + log_s4);
    best = log_dim_factor + log_s4;
    b.route = ChiRoute::holder_sidon;
  }
  {
    const double lpf = log_polarization_factor(m);
    const double log_gl_equiv = 2.0 * lpf + m * std::numbers::ln2;   // chi <= (m^m/m!)^2 2^m gl
    const double log_golproj = std::numbers::ln2 + 2.0 * lpf;        // gl <= 2 (m^m/m!)^2 lambda
    const double log_lambda = log_projection_bound(m - 1, n, p);
    const double total = log_gl_equiv + log_golproj + log_lambda;
    b.components["chain.chi_over_gl"] = std::exp(log_gl_equiv);
    b.components["chain.gl_over_lambda"] = std::exp(log_golproj);
    b.components["chain.lambda_degree_m_minus_1"] = std::exp(log_lambda);
    b.components["chain.value"] = std::exp(total);
    if (total < best) {
      best = total;
      b.route = ChiRoute::gl_lambda_chain;
    }
  }
  b.log_upper = best;
  b.upper = std::exp(best);
  return b;
}

double asymptotic_comparator(const BallSpec& ball) {
  const double n = ball.n;
  const double e = 1.0 - 1.0 / std::min(ball.p, 2.0);
  return std::pow(std::log(n) / n, e);
}

BohrResult bohr_lower_bound(const BallSpec& ball) {
  const int m_cap = std::max(ball.n, 64);
  std::vector<double> roots(static_cast<std::size_t>(m_cap));
#pragma omp parallel for schedule(static)
  for (int m = 1; m <= m_cap; ++m)
    roots[m - 1] = chi_upper_bound(m, ball.n, ball.p).log_upper / m;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (roots[i] > roots[arg])
      arg = i;
  }
  BohrResult out;
  out.kind = BohrKind::theoretical_lower;
  out.radius = 1.0 / (3.0 * std::exp(roots[arg]));
  out.iterations = m_cap;
  const ChiBound worst = chi_upper_bound(static_cast<int>(arg) + 1, ball.n, ball.p);
  out.factors["m_cap"] = m_cap;
  out.factors["argmax_m"] = static_cast<double>(arg + 1);
  out.factors["chi_root_max"] = std::exp(roots[arg]);
  out.factors["chi_at_argmax"] = worst.upper;
  out.factors["route_at_argmax." + std::string(route_name(worst.route))] = 1.0;
  out.factors["asymptotic_comparator"] = asymptotic_comparator(ball);
  return out;
}

LinkReport link_consistency(const BohrResult& lower, const BohrResult& upper, double tolerance) {
  LinkReport r;
  r.lower = lower.radius;
  r.upper = upper.radius;
  r.lower_below_upper = lower.radius <= upper.radius + tolerance;
  r.upper_checked_against_third = upper.moebius_slice;
  if (upper.moebius_slice)
    r.upper_below_third = upper.radius <= 1.0 / 3.0 + tolerance;
  r.pass = r.lower_below_upper && r.upper_below_third;
  return r;
}

DAlphaReport d_alpha_probe(const MultiIndex& alpha, const OptimizerSpec& opt, int iterations) {
  const int m = alpha.degree();
  const int n = alpha.dimension();
  if (m < 1 || n < 1)
    throw std::invalid_argument("d_alpha_probe: need |alpha| >= 1");
  if (dimension(m, n) > 50)
    throw std::range_error("d_alpha_probe: dim(m,n) exceeds the probe limit 50");
  const auto exponents = enumerate_exponents(m, n);
  const auto target = static_cast<std::size_t>(
      std::find(exponents.begin(), exponents.end(), alpha) - exponents.begin());
  auto to_polynomial = [&](const std::vector<Complex>& c) {
    PolynomialSparse p(n, m);
    for (std::size_t k = 0; k < c.size(); ++k)
      p.set(exponents[k], c[k]);
    return p;
  };
  OptimizerSpec inner = opt;
  inner.threads = 1;
  inner.restarts = std::min(opt.restarts, 4);
  detail::ScoreFn score = [&](const std::vector<Complex>& c, const std::vector<double>& warm) {
    std::vector<std::vector<double>> starts;
    if (!warm.empty())
      starts.push_back(warm);
    auto s = sup_norm_polydisc_detailed(to_polynomial(c), inner, starts);
    return detail::Scored{1.0 / s.certificate.lower, std::move(s.argmax_phases)};
  };

  std::vector<Complex> start(exponents.size());
  std::mt19937_64 rng(derive_seed(opt.seed, 0));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (auto& c : start)
    c = std::polar(0.1, phase(rng));
  start[target] = 1.0;
  std::vector<char> frozen(exponents.size(), 0);
  frozen[target] = 1;
  const auto climb = detail::hill_climb(start, frozen, iterations, derive_seed(opt.seed, 1), score);

  DAlphaReport r;
  PolynomialSparse found = to_polynomial(climb.coeffs);
  const double found_value =
      1.0 / sup_norm_polydisc_detailed(found, opt, {climb.best.argmax}).certificate.lower;
  // the monomial itself has sup exactly 1
  PolynomialSparse mono(n, m);
  mono.set(alpha, 1.0);
  if (found_value > 1.0) {
    r.value = found_value;
    r.witness = found;
  } else {
    r.value = 1.0;
    r.witness = mono;
  }
  r.pass = r.value >= r.lower_bound;
  return r;
}

} // namespace bhlab
