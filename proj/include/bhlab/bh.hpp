#pragma once

// Bohnenblust-Hille engines: coefficient/sup ratios, Blei's inequality, the
// table of closed-form constants, the Holder step and extremal search.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bhlab/certificate.hpp"
#include "bhlab/harmonic.hpp"
#include "bhlab/polynomial.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab {

struct ConstantTableRow {
  int m = 1;
  double bhh_original = 1.0; // m^{(m+1)/2m} 2^{(m-1)/2}
  double davie_kaijser = 1.0; // sqrt2^{m-1}
  double harris = 1.0;
  double queffelec = 1.0;
  double step4 = 1.0;        // sqrt2^{m-1} sqrt(m) m^m/m!
};

/// Rows m = 1..m_max, evaluated in log space.
std::vector<ConstantTableRow> constant_table(int m_max);
ConstantTableRow constant_row(int m);

/// log(m^m / m!)
double log_polarization_factor(int m);
/// log of the step4 constant, finite far beyond where the constant overflows.
double log_step4(int m);

struct RatioResult {
  /// numerator / denominator.lower. Since the lower end is an attained
  /// value this over-estimates the true ratio.
  double ratio = 0.0;
  double conservative_ratio = 0.0; // numerator / denominator.upper
  CoefficientNormReport numerator;
  NormCertificate denominator;
  std::optional<PolynomialSparse> polynomial;
  std::optional<MultilinearTensor> tensor;
  std::vector<double> argmax_phases;
  int trajectory = -1; // extremal_search: winning restart, -1 for the incumbent
};

/// l_{2m/(m+1)}(a) / sup_{D^n} |P|. P homogeneous and nonzero.
RatioResult bh_ratio_poly(const PolynomialSparse& p, const OptimizerSpec& opt = {});

/// l_{2m/(m+1)}(c) / sup |A| over (D^n)^m. A nonzero.
RatioResult bh_ratio_multilinear(const MultilinearTensor& a, const OptimizerSpec& opt = {});

/// sum |a_alpha| / sup_{D^n} |P|, the Sidon quotient of one polynomial.
RatioResult sidon_ratio(const PolynomialSparse& p, const OptimizerSpec& opt = {});

struct MarginReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0; // rhs - lhs
};

/// prod_k ( sum_{i_k} ( sum_{other slots} |c_i|^2 )^{1/2} )^{1/m}
double blei_rhs(const MultilinearTensor& c);
/// lhs = (sum |c_i|^{2m/(m+1)})^{(m+1)/2m}
MarginReport blei_check(const MultilinearTensor& c);

/// sum |a| <= dim(m,n)^{(m-1)/2m} * l_{2m/(m+1)}(a), P homogeneous.
MarginReport holder_step_check(const PolynomialSparse& p);

enum class SearchObjective { bh_poly, bh_multilinear, sidon };
SearchObjective parse_objective(std::string_view name);
std::string_view objective_name(SearchObjective o);

struct SearchBudget {
  int restarts = 16;     // independent trajectories
  int iterations = 200;  // hill-climbing steps per trajectory
};

/// Parses "RxI" (e.g. "64x500") or a bare restart count.
SearchBudget parse_budget(std::string_view text);

struct SearchOptions {
  int inner_restarts = 4;   // sup-norm restarts per candidate
  int final_restarts = 64;  // sup-norm restarts for each trajectory's end point
  int threads = 0;
};

/// Largest involved coefficient count accepted by extremal_search.
inline constexpr std::uint64_t kSearchSizeLimit = 5000;

/// Maximizes the chosen ratio over coefficients: Steinhaus start, then
/// phase/modulus hill climbing with the inner sup warm-started from the
/// last argmax. Every trajectory's end point is re-estimated with
/// `final_restarts` restarts and the best re-estimated ratio is returned
/// (lowest restart index on ties). The monomial z_1^m, ratio 1, is the
/// starting incumbent.
RatioResult extremal_search(SearchObjective objective, int m, int n, const SearchBudget& budget,
                            std::uint64_t seed, const SearchOptions& options = {});

} // namespace bhlab
