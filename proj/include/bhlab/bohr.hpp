#pragma once

// Bohr radii of l_p balls: per-function radii, family upper bounds, the
// explicit chi_mon bound chain behind the theoretical lower bound, and the
// projection-constant estimates it uses.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhlab/harmonic.hpp"
#include "bhlab/polynomial.hpp"

namespace bhlab {

struct BallSpec {
  int n = 1;
  double p = kInf;

  BallSpec() = default;
  BallSpec(int n_, double p_);
};

/// Parses a positive real >= 1 or the literal "inf".
double parse_p(std::string_view text);
std::string format_p(double p);

enum class BohrKind { per_function, family_upper, theoretical_lower };
std::string_view kind_name(BohrKind k);

struct BohrResult {
  double radius = 0.0;
  BohrKind kind = BohrKind::per_function;
  std::optional<PolynomialSparse> witness;
  std::string witness_label;
  int iterations = 0;
  NormCertificate sup;                  // per-function: the sup used
  std::map<std::string, double> factors; // theoretical-lower itemization
  bool moebius_slice = false;           // family contained a one-variable Moebius slice
};

/// sum |a_alpha| r^{|alpha|} sup_{B_p}|z^alpha|
double majorant(const PolynomialSparse& f, double r, const BallSpec& ball);

/// A function offered to the radius computation: a polynomial (possibly a
/// truncation), an optional exactly known sup over the ball, and an optional
/// majorant tail accounting for dropped terms.
struct BohrCandidate {
  PolynomialSparse f;
  std::optional<double> known_sup;
  std::function<double(double)> tail; // r -> majorant of the dropped terms
  std::string label;
};

/// Largest r in [0,1] with majorant(f, r) <= sup_B |f|, by bisection to 1e-12.
/// The sup is the attained lower estimate, so an under-estimated sup can
/// only shrink the radius.
BohrResult per_function_radius(const PolynomialSparse& f, const BallSpec& ball,
                               const OptimizerSpec& opt = {});
BohrResult per_function_radius(const BohrCandidate& c, const BallSpec& ball,
                               const OptimizerSpec& opt = {});

/// (a - z_1)/(1 - a z_1) truncated at `degree`, sup 1, with the exact tail
/// (1-a^2) a^D r^{D+1} / (1 - a r).
BohrCandidate moebius_candidate(double a, int degree, int n);

enum class BohrFamily { moebius, random_graded, search_witnesses, coordinate };
BohrFamily parse_family(std::string_view name);
std::string_view family_name(BohrFamily f);

struct FamilySpec {
  BohrFamily family = BohrFamily::moebius;
  std::vector<double> moebius_a{0.5, 0.7, 0.9, 0.95, 0.99};
  int degree = 80;          // moebius truncation, graded degree, or witness degree m
  int count = 16;           // random-graded members / search restarts
  int search_iterations = 200;
  std::uint64_t seed = 1;
};

std::vector<BohrCandidate> build_family(const FamilySpec& spec, const BallSpec& ball, int threads);

/// Minimum per-function radius over the candidates (lowest index on ties).
BohrResult bohr_upper_bound(const BallSpec& ball, const std::vector<BohrCandidate>& candidates,
                            const OptimizerSpec& opt = {});
BohrResult bohr_upper_bound(const BallSpec& ball, const FamilySpec& family,
                            const OptimizerSpec& opt = {});

enum class ChiRoute { exact, holder_sidon, gl_lambda_chain };
std::string_view route_name(ChiRoute r);

struct ChiBound {
  int m = 1;
  int n = 1;
  double p = kInf;
  double upper = 1.0;
  double log_upper = 0.0;
  ChiRoute route = ChiRoute::exact;
  std::map<std::string, double> components;
};

/// Explicit upper bound for chi_mon(P(^m l_p^n)): the minimum over the
/// Holder-Sidon route (p = inf) and the Gordon-Lewis/projection chain
/// (m >= 2); m = 1 and n = 1 are exactly 1.
ChiBound chi_upper_bound(int m, int n, double p);

/// min(sqrt(dim(m,n)), e^{m/p} c^{m/q} (1+n/m)^{m/q}), in log form.
double log_projection_bound(int m, int n, double p);
double projection_bound(int m, int n, double p);

/// 1 / (3 sup_{m <= max(n,64)} chi^{1/m}).
BohrResult bohr_lower_bound(const BallSpec& ball);

/// (log n / n)^{1 - 1/min(p,2)}
double asymptotic_comparator(const BallSpec& ball);

struct LinkReport {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_below_upper = false;
  bool upper_checked_against_third = false;
  bool upper_below_third = true;
  bool pass = false;
};

LinkReport link_consistency(const BohrResult& lower, const BohrResult& upper, double tolerance);

struct DAlphaReport {
  double value = 0.0;      // best |a_alpha| / sup found
  double lower_bound = 1.0; // z^alpha witnesses d_alpha >= 1
  bool pass = false;       // value >= 1 - tolerance
  PolynomialSparse witness{1};
};

/// Heuristic estimate of d_alpha = sup{|a_alpha| : ||P||_{D^n} <= 1} at p = inf.
/// Guard: dim(m,n) <= 50.
DAlphaReport d_alpha_probe(const MultiIndex& alpha, const OptimizerSpec& opt, int iterations = 200);

} // namespace bhlab
