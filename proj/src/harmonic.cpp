#include "bhlab/harmonic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bhlab/kernels.hpp"
#include "bhlab/seeding.hpp"
#include "objectives.hpp"
#include "phase_optimizer.hpp"

namespace bhlab {

using detail::PhaseObjective;
using detail::SphereObjective;

namespace {

using kernels::PinMask;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Homogeneous polynomials satisfy |P(e^{i phi} z)| = |P(z)|, so one phase
// can be held fixed without changing any torus integral or supremum.
PinMask rotation_pin(const PolynomialSparse& p) {
  if (p.is_zero() || !p.is_homogeneous() || p.max_degree() == 0)
    return {};
  PinMask mask(static_cast<std::size_t>(p.dimension()), 0);
  mask[0] = 1;
  return mask;
}

int free_count(int n, const PinMask& mask) {
  int d = 0;
  for (int k = 0; k < n; ++k)
    d += kernels::is_pinned(mask, k) ? 0 : 1;
  return d;
}

double grid_points(int nodes, int free_dims) { return std::pow(static_cast<double>(nodes), free_dims); }

bool is_even_integer(double p) {
  return p == std::floor(p) && std::fmod(p, 2.0) == 0.0 && p <= 64.0;
}

double coefficient_sum(const PolynomialSparse& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms())
    s += std::abs(c);
  return s;
}

double exact_even_norm(const DenseMonomials& dense, double power, int min_nodes,
                       const PinMask& pin, int threads, std::int64_t& evaluations) {
  const int nodes = std::max(min_nodes, static_cast<int>(power) * dense.max_exponent + 1);
  evaluations += static_cast<std::int64_t>(grid_points(nodes, free_count(dense.n, pin)));
  return std::pow(kernels::omp::torus_power_mean(dense, power, nodes, pin, threads), 1.0 / power);
}

NormCertificate monte_carlo_norm(const PolynomialSparse& p, double power,
                                 const QuadratureSpec& spec) {
  const DenseMonomials dense(p);
  const PinMask pin = rotation_pin(p);
  const long samples = std::max(1L, spec.samples);
  const auto mc =
      kernels::omp::monte_carlo_power_mean(dense, power, samples, spec.seed, pin, spec.threads);
  const double half = 3.0 * mc.std_error;
  NormCertificate c;
  c.method = "monte-carlo";
  c.estimate = std::pow(mc.mean, 1.0 / power);
  c.lower = std::pow(std::max(0.0, mc.mean - half), 1.0 / power);
  c.upper = std::pow(mc.mean + half, 1.0 / power);
  c.evaluations = samples;
  c.converged = mc.mean > 0.0 && half / mc.mean <= 1e-3;
  return c;
}

} // namespace

double lp_norm_torus_grid(const PolynomialSparse& p, double power, int nodes, int threads) {
  if (!(power >= 1.0))
    throw std::invalid_argument("lp_norm_torus_grid: p must be >= 1");
  if (nodes < 1)
    throw std::invalid_argument("lp_norm_torus_grid: nodes must be >= 1");
  if (p.is_zero())
    return 0.0;
  const DenseMonomials dense(p);
  return std::pow(kernels::omp::torus_power_mean(dense, power, nodes, {}, threads), 1.0 / power);
}

NormCertificate lp_norm_torus(const PolynomialSparse& p, double power, const QuadratureSpec& spec) {
  if (!(power >= 1.0))
    throw std::invalid_argument("lp_norm_torus: p must be >= 1");
  if (spec.nodes_per_dim < 1)
    throw std::invalid_argument("lp_norm_torus: nodes_per_dim must be >= 1");
  if (p.is_zero())
    return NormCertificate::exact(0.0, "zero");
  if (std::isinf(power)) {
    // sup over the torus; no quadrature applies
    return sup_norm_polydisc(p, OptimizerSpec{32, 200, 1e-8, spec.seed, spec.threads});
  }
  if (spec.scheme == QuadratureScheme::monte_carlo)
    return monte_carlo_norm(p, power, spec);
  if (power == 2.0)
    return NormCertificate::exact(coefficient_lq_norm(p, 2.0).value, "parseval");

  const DenseMonomials dense(p);
  const PinMask pin = rotation_pin(p);
  const int free_dims = free_count(p.dimension(), pin);
  const int threads = spec.threads;

  if (is_even_integer(power)) {
    NormCertificate c;
    c.method = "phase-grid-exact";
    c.estimate = exact_even_norm(dense, power, spec.nodes_per_dim, pin, threads, c.evaluations);
    c.lower = c.upper = c.estimate;
    return c;
  }

  NormCertificate c;
  c.method = "phase-grid-refined";
  // Holder enclosures from exactly computable even moments
  const double l2 = coefficient_lq_norm(p, 2.0).value;
  double hold_lo = 0.0;
  double hold_hi = kInf;
  if (power < 2.0) {
    const double l4 = exact_even_norm(dense, 4.0, 1, pin, threads, c.evaluations);
    const double theta = power / (4.0 - power);
    hold_hi = l2;
    hold_lo = std::pow(l2 / std::pow(l4, 1.0 - theta), 1.0 / theta);
  } else {
    const double even = 2.0 * std::ceil(power / 2.0);
    hold_lo = l2;
    hold_hi = exact_even_norm(dense, even, 1, pin, threads, c.evaluations);
  }

  int nodes = std::max(spec.nodes_per_dim, 4 * dense.max_exponent + 4);
  auto grid_norm = [&](int N) {
    c.evaluations += static_cast<std::int64_t>(grid_points(N, free_dims));
    return std::pow(kernels::omp::torus_power_mean(dense, power, N, pin, threads), 1.0 / power);
  };
  double prev = grid_norm(nodes);
  double cur = prev;
  bool converged = free_dims == 0;
  while (!converged) {
    const int next = 2 * nodes;
    if (grid_points(next, free_dims) > static_cast<double>(spec.max_points))
      break;
    cur = grid_norm(next);
    nodes = next;
    const double diff = std::abs(cur - prev);
    if (diff <= spec.refine_tolerance * cur) {
      converged = true;
      break;
    }
    prev = cur;
  }
  const double err = std::abs(cur - prev);
  c.estimate = std::clamp(cur, hold_lo, hold_hi);
  c.lower = std::max(hold_lo, c.estimate - err);
  c.upper = std::min(hold_hi, c.estimate + err);

  if (spec.samples > 0) {
    const auto mc = kernels::omp::monte_carlo_power_mean(dense, power, spec.samples, spec.seed,
                                                         pin, threads);
    c.evaluations += spec.samples;
    const double grid_moment = std::pow(cur, power);
    if (std::abs(grid_moment - mc.mean) > 6.0 * mc.std_error + 1e-12 * grid_moment)
      converged = false;
  }
  c.converged = converged;
  return c;
}

ComparisonReport parseval_check(const PolynomialSparse& p, int threads) {
  ComparisonReport r;
  r.rhs = coefficient_lq_norm(p, 2.0).value;
  if (p.is_zero()) {
    r.pass = true;
    return r;
  }
  const DenseMonomials dense(p);
  r.lhs = lp_norm_torus_grid(p, 2.0, 2 * dense.max_exponent + 1, threads);
  r.margin = std::abs(r.lhs - r.rhs);
  r.pass = r.margin <= 1e-10 * (1.0 + r.rhs);
  return r;
}

BonamiReport bonami_check(const PolynomialSparse& p, const QuadratureSpec& spec) {
  if (p.dimension() != 1)
    throw std::invalid_argument("bonami_check: one-variable polynomial required");
  BonamiReport r;
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms())
    s += std::ldexp(std::norm(c), -alpha.degree());
  r.lhs = std::sqrt(s);
  r.rhs = lp_norm_torus(p, 1.0, spec);
  r.margin = r.rhs.estimate - r.lhs;
  r.certified_margin = r.rhs.lower - r.lhs;
  return r;
}

HypercontractiveReport hypercontractive_l2_l1_check(const PolynomialSparse& p,
                                                    const QuadratureSpec& spec) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("hypercontractive_l2_l1_check: polynomial must be homogeneous");
  HypercontractiveReport r;
  const int m = p.homogeneous_degree().value_or(p.max_degree());
  r.bound = std::pow(std::numbers::sqrt2, m);
  r.l2 = coefficient_lq_norm(p, 2.0).value;
  r.l1 = lp_norm_torus(p, 1.0, spec);
  if (p.is_zero()) {
    r.slack = r.bound;
    return r;
  }
  r.ratio = r.l2 / r.l1.estimate;
  r.conservative_ratio = r.l2 / r.l1.lower;
  r.slack = r.bound - r.ratio;
  return r;
}

double monomial_sup_lp(const MultiIndex& alpha, double power) {
  if (!(power >= 1.0))
    throw std::invalid_argument("monomial_sup_lp: p must be >= 1");
  const int m = alpha.degree();
  if (std::isinf(power) || m == 0)
    return 1.0;
  double log_sup = 0.0;
  for (int e : alpha.exponents()) {
    if (e > 0)
      log_sup += e * std::log(static_cast<double>(e) / m);
  }
  return std::exp(log_sup / power);
}

namespace {

// Shared multi-start driver. Starts are ordered: warm starts, then up to four
// grid seeds, then derived-seed random starts. Adding restarts only appends
// starts, so the best value is monotone in the restart count.
struct StartPlan {
  std::vector<std::vector<double>> starts; // free-variable vectors
};

struct Evaluated {
  double value = -1.0;  // normalized objective |P|/scale at x
  double grad_norm = 0.0;
  std::vector<double> x;
  long evaluations = 0;
};

Evaluated pick_best(const std::vector<Evaluated>& results) {
  Evaluated best;
  for (const auto& r : results) {
    if (r.value > best.value)
      best = r;
  }
  return best;
}


std::vector<Evaluated> run_starts(const detail::Objective& f, const StartPlan& plan,
                                  const OptimizerSpec& opt) {
  std::vector<Evaluated> results(plan.starts.size());
  const int count = static_cast<int>(plan.starts.size());
#pragma omp parallel for num_threads(resolve_threads(opt.threads)) schedule(dynamic)
  for (int r = 0; r < count; ++r) {
    auto a = detail::bfgs_maximize(f, plan.starts[r], opt.max_iters, 0.1 * opt.step_tolerance,
                                   std::numbers::pi);
    Evaluated e;
    e.value = std::sqrt(std::max(0.0, a.value));
    // gradient of |P|/scale from the gradient of its square
    e.grad_norm = e.value > 0.0 ? a.grad_norm / (2.0 * e.value) : 0.0;
    e.x = std::move(a.x);
    e.evaluations = a.evaluations;
    results[r] = std::move(e);
  }
  return results;
}

int seed_nodes(int degree, int free_dims) {
  int g = static_cast<int>(std::ceil(12.0 / std::max(1, degree))) + 4;
  while (g > 1 && grid_points(g, free_dims) > 1e6)
    --g;
  return g;
}

SupResult sup_on_torus(const PolynomialSparse& p, const PinMask& pin, const OptimizerSpec& opt,
                       const std::vector<std::vector<double>>& warm_starts,
                       const std::string& method) {
  if (opt.restarts < 1)
    throw std::invalid_argument("OptimizerSpec: restarts must be >= 1");
  SupResult out;
  const int n = p.dimension();
  out.argmax_phases.assign(static_cast<std::size_t>(n), 0.0);
  if (p.is_zero()) {
    out.certificate = NormCertificate::exact(0.0, method);
    return out;
  }
  const double scale = coefficient_sum(p);
  if (p.max_degree() == 0) {
    out.certificate = NormCertificate::exact(scale, method);
    return out;
  }
  const DenseMonomials dense(p);
  std::vector<int> free_vars;
  for (int k = 0; k < n; ++k) {
    if (!kernels::is_pinned(pin, k))
      free_vars.push_back(k);
  }
  const int d = static_cast<int>(free_vars.size());
  PhaseObjective objective{dense, free_vars, 1.0 / (scale * scale)};

  StartPlan plan;
  for (const auto& w : warm_starts) {
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("sup-norm warm start has wrong length");
    std::vector<double> x;
    for (int k : free_vars)
      x.push_back(w[k]);
    plan.starts.push_back(std::move(x));
  }
  const int nodes = seed_nodes(p.max_degree(), d);
  const int grid_seeds = std::min(opt.restarts, 4);
  const auto seeds = kernels::omp::grid_top_k(dense, nodes, pin, grid_seeds, opt.threads);
  std::int64_t evaluations = static_cast<std::int64_t>(grid_points(nodes, d));
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> x(static_cast<std::size_t>(d));
    if (r < static_cast<int>(seeds.size())) {
      for (int j = 0; j < d; ++j)
        x[j] = seeds[r].theta[free_vars[j]];
    } else {
      std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> phase(0.0, kTwoPi);
      for (auto& v : x)
        v = phase(rng);
    }
    plan.starts.push_back(std::move(x));
  }

  const auto results = run_starts(objective, plan, opt);
  for (const auto& r : results)
    evaluations += r.evaluations;
  const Evaluated best = pick_best(results);

  for (int j = 0; j < d; ++j)
    out.argmax_phases[free_vars[j]] = std::remainder(best.x[j], kTwoPi);
  out.grad_norm = best.grad_norm;
  auto& c = out.certificate;
  c.method = method;
  c.lower = c.estimate = best.value * scale;
  c.upper = std::max(scale, c.lower);
  c.evaluations = evaluations;
  c.converged = best.grad_norm <= opt.step_tolerance;
  return out;
}

} // namespace

SupResult sup_norm_polydisc_detailed(const PolynomialSparse& p, const OptimizerSpec& opt,
                                     const std::vector<std::vector<double>>& warm_starts) {
  return sup_on_torus(p, rotation_pin(p), opt, warm_starts, "polydisc-multistart-bfgs");
}

NormCertificate sup_norm_polydisc(const PolynomialSparse& p, const OptimizerSpec& opt) {
  return sup_norm_polydisc_detailed(p, opt).certificate;
}

PolynomialSparse multilinear_as_polynomial(const MultilinearTensor& a) {
  const int m = a.arity();
  const int n = a.dimension();
  PolynomialSparse p(m * n, m);
  std::vector<int> exps(static_cast<std::size_t>(m * n), 0);
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] == Complex{})
      continue;
    const IndexTuple i = a.tuple_at(f);
    std::fill(exps.begin(), exps.end(), 0);
    for (int k = 0; k < m; ++k)
      exps[static_cast<std::size_t>(k * n + i[k] - 1)] = 1;
    p.set(MultiIndex(exps), a[f]);
  }
  return p;
}

SupResult sup_norm_multilinear_detailed(const MultilinearTensor& a, const OptimizerSpec& opt,
                                        const std::vector<std::vector<double>>& warm_starts) {
  const int m = a.arity();
  const int n = a.dimension();
  // each slot is invariant under a common rotation of its coordinates
  PinMask pin(static_cast<std::size_t>(m * n), 0);
  for (int k = 0; k < m; ++k)
    pin[static_cast<std::size_t>(k * n)] = 1;
  return sup_on_torus(multilinear_as_polynomial(a), pin, opt, warm_starts,
                      "multilinear-multistart-bfgs");
}

NormCertificate sup_norm_multilinear(const MultilinearTensor& a, const OptimizerSpec& opt) {
  return sup_norm_multilinear_detailed(a, opt).certificate;
}

NormCertificate sup_norm_lp_ball(const PolynomialSparse& p, double power, const OptimizerSpec& opt) {
  if (!(power >= 1.0))
    throw std::invalid_argument("sup_norm_lp_ball: p must be >= 1");
  if (std::isinf(power))
    return sup_norm_polydisc(p, opt);
  if (opt.restarts < 1)
    throw std::invalid_argument("OptimizerSpec: restarts must be >= 1");
  if (p.is_zero())
    return NormCertificate::exact(0.0, "lp-sphere-multistart-bfgs");
  const int n = p.dimension();
  double upper = 0.0;
  for (const auto& [alpha, c] : p.terms())
    upper += std::abs(c) * monomial_sup_lp(alpha, power);
  if (p.max_degree() == 0)
    return NormCertificate::exact(upper, "lp-sphere-multistart-bfgs");

  const DenseMonomials dense(p);
  const PinMask pin = rotation_pin(p);
  std::vector<int> free_vars;
  for (int k = 0; k < n; ++k) {
    if (!kernels::is_pinned(pin, k))
      free_vars.push_back(k);
  }
  SphereObjective objective{dense, free_vars, power, 1.0 / (upper * upper)};
  const std::size_t dim = static_cast<std::size_t>(n) + free_vars.size();

  // Vertices of the sphere (a single nonzero coordinate) are evaluated
  // exactly: the softmax chart only reaches them in the limit.
  double vertex_best = 0.0;
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> z(static_cast<std::size_t>(n));
    z[k] = 1.0;
    for (const auto& [alpha, c] : p.terms()) {
      if (alpha[k] == alpha.degree())
        vertex_best = std::max(vertex_best, std::abs(p.evaluate(z)));
    }
  }

  // Phases for the centroid start come from the polydisc grid seed pass.
  const auto phase_seed = kernels::omp::grid_top_k(dense, seed_nodes(p.max_degree(),
                                                   static_cast<int>(free_vars.size())),
                                                   pin, 1, opt.threads);
  StartPlan plan;
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> x(dim, 0.0);
    if (r == 0) {
      for (std::size_t j = 0; j < free_vars.size(); ++j)
        x[static_cast<std::size_t>(n) + j] = phase_seed.front().theta[free_vars[j]];
    } else if (r <= n) {
      for (int k = 0; k < n; ++k)
        x[k] = k == r - 1 ? 0.0 : -20.0;
    } else {
      std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
      std::normal_distribution<double> g(0.0, 1.5);
      std::uniform_real_distribution<double> phase(0.0, kTwoPi);
      for (int k = 0; k < n; ++k)
        x[k] = g(rng);
      for (std::size_t j = 0; j < free_vars.size(); ++j)
        x[static_cast<std::size_t>(n) + j] = phase(rng);
    }
    plan.starts.push_back(std::move(x));
  }
  const auto results = run_starts(objective, plan, opt);
  std::int64_t evaluations = 0;
  for (const auto& r : results)
    evaluations += r.evaluations;
  const Evaluated best = pick_best(results);

  NormCertificate c;
  c.method = "lp-sphere-multistart-bfgs";
  const double attained = best.value * upper;
  c.lower = c.estimate = std::max(attained, vertex_best);
  c.upper = std::max(upper, c.lower);
  c.evaluations = evaluations;
  // a vertex optimum sits on the chart boundary, where the gradient test
  // does not apply
  c.converged = best.grad_norm <= opt.step_tolerance || vertex_best >= attained;
  return c;
}

} // namespace bhlab
