#pragma once

// Analysis on the torus T^n and on l_p balls: L_p(mu^n) norms, the Parseval,
// Bonami and L2-L1 hypercontractive checks, and sup-norm estimation.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bhlab/certificate.hpp"
#include "bhlab/polynomial.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab {

enum class QuadratureScheme { phase_grid, monte_carlo };

struct QuadratureSpec {
  int nodes_per_dim = 16;       // starting grid; raised automatically where exactness needs it
  QuadratureScheme scheme = QuadratureScheme::phase_grid;
  long samples = 4096;          // Monte Carlo cross-check sample count (0 disables it)
  std::uint64_t seed = 1;
  long max_points = 1L << 22;   // refinement stops before a grid exceeds this
  double refine_tolerance = 1e-7;
  int threads = 0;              // 0: OpenMP default
};

struct OptimizerSpec {
  int restarts = 16;
  int max_iters = 200;
  double step_tolerance = 1e-8; // gradient-norm threshold for convergence
  std::uint64_t seed = 1;
  int threads = 0;              // 1 runs restarts serially
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (int_{T^n} |P|^p dmu^n)^{1/p}. p = 2 is exact by Parseval; even integer p
/// uses an exact phase grid; other p use grid refinement with ratio 2,
/// Holder enclosures and a Monte Carlo cross-check.
NormCertificate lp_norm_torus(const PolynomialSparse& p, double power,
                              const QuadratureSpec& spec = {});

/// Plain phase-grid quadrature over the full torus with `nodes` per variable.
double lp_norm_torus_grid(const PolynomialSparse& p, double power, int nodes, int threads = 0);

struct ComparisonReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs (or slack against the bound)
  bool pass = false;
};

/// L2 norm by grid quadrature (N = 2 deg + 1) against the coefficient l2 norm.
ComparisonReport parseval_check(const PolynomialSparse& p, int threads = 0);

struct BonamiReport {
  double lhs = 0.0;        // (sum 2^-nu |a_nu|^2)^{1/2}
  NormCertificate rhs;     // L1 norm on T
  double margin = 0.0;     // rhs.estimate - lhs
  double certified_margin = 0.0; // rhs.lower - lhs
};

/// Bonami's one-variable inequality ||sum 2^{-nu/2} a_nu z^nu||_2 <= ||sum a_nu z^nu||_1.
BonamiReport bonami_check(const PolynomialSparse& p, const QuadratureSpec& spec = {});

struct HypercontractiveReport {
  double l2 = 0.0;          // coefficient l2 norm
  NormCertificate l1;       // L1(mu^n)
  double ratio = 0.0;       // l2 / l1.estimate
  double conservative_ratio = 0.0; // l2 / l1.lower
  double bound = 0.0;       // sqrt(2)^m
  double slack = 0.0;       // bound - ratio
};

/// (sum |a_alpha|^2)^{1/2} <= sqrt(2)^m ||P||_{L1} for m-homogeneous P.
HypercontractiveReport hypercontractive_l2_l1_check(const PolynomialSparse& p,
                                                    const QuadratureSpec& spec = {});

struct SupResult {
  NormCertificate certificate;
  std::vector<double> argmax_phases; // phases attaining `certificate.lower`
  double grad_norm = 0.0;
};

/// sup over the closed polydisc, i.e. over T^n. Multi-start BFGS in the
/// phases from a coarse-grid seed pass plus derived-seed random starts.
NormCertificate sup_norm_polydisc(const PolynomialSparse& p, const OptimizerSpec& opt = {});

/// As above, with extra starting phase vectors tried before the grid seeds.
SupResult sup_norm_polydisc_detailed(const PolynomialSparse& p, const OptimizerSpec& opt,
                                     const std::vector<std::vector<double>>& warm_starts = {});

/// sup over the unit ball of l_p^n (p in [1, inf]).
NormCertificate sup_norm_lp_ball(const PolynomialSparse& p, double power,
                                 const OptimizerSpec& opt = {});

/// sup |z^alpha| over the l_p unit ball: prod (alpha_k/m)^{alpha_k/p}.
double monomial_sup_lp(const MultiIndex& alpha, double power);

/// sup |A(x^1..x^m)| over (D^n)^m.
NormCertificate sup_norm_multilinear(const MultilinearTensor& a, const OptimizerSpec& opt = {});
SupResult sup_norm_multilinear_detailed(const MultilinearTensor& a, const OptimizerSpec& opt,
                                        const std::vector<std::vector<double>>& warm_starts = {});

/// The multilinear form as a polynomial in m*n variables (slot k, coordinate
/// j -> variable k*n + j).
PolynomialSparse multilinear_as_polynomial(const MultilinearTensor& a);

} // namespace bhlab
