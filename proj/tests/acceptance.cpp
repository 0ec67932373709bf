// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bhlab/bh.hpp"
#include "bhlab/bohr.hpp"
#include "bhlab/cli.hpp"
#include "bhlab/harmonic.hpp"
#include "bhlab/multiindex.hpp"
#include "bhlab/polynomial.hpp"
#include "bhlab/tensor.hpp"

using namespace bhlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

MultilinearTensor random_tensor(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> c(static_cast<std::size_t>(tuple_count(m, n)));
  for (auto& v : c) {
    switch (seed % 3) {
    case 0: v = std::polar(1.0, u(rng)); break;
    case 1: v = {g(rng), g(rng)}; break;
    default: v = (rng() % 3 == 0) ? Complex{} : Complex{g(rng), 0.0}; break;
    }
  }
  return MultilinearTensor(m, n, std::move(c));
}

// A1
Outcome parseval() {
  constexpr double tol = 1e-10;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const int m = 1 + s % 4;
    const int n = 1 + (s / 4) % 3;
    const auto p = random_polynomial(m, n, static_cast<Ensemble>(s % 3), 1000 + s);
    const auto r = parseval_check(p);
    worst = std::max(worst, std::abs(r.lhs - r.rhs) / r.rhs);
  }
  return {worst <= tol, fmt("worst relative error %.3e (tol %.0e)", worst, tol)};
}

// A2
Outcome littlewood_linear() {
  constexpr double tol = 1e-8;
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const int n = 1 + s % 12;
    const auto p = random_polynomial(1, n, static_cast<Ensemble>(s % 3), 2000 + s);
    OptimizerSpec opt;
    opt.seed = 2000 + s;
    worst = std::max(worst, std::abs(bh_ratio_poly(p, opt).ratio - 1.0));
  }
  return {worst <= tol, fmt("worst |ratio - 1| %.3e (tol %.0e)", worst, tol)};
}

// A3
Outcome bonami() {
  constexpr double margin_tol = 1e-6;
  constexpr double anchor_tol = 1e-5;
  double worst = 1e300;
  for (int s = 0; s < 1000; ++s) {
    const int degree = 1 + s % 8;
    const auto p = random_graded_polynomial(degree, 1, static_cast<Ensemble>(s % 3), 3000 + s);
    worst = std::min(worst, bonami_check(p).margin);
  }
  PolynomialSparse one_plus_z(1);
  one_plus_z.set(MultiIndex({0}), 1.0);
  one_plus_z.set(MultiIndex({1}), 1.0);
  const auto a = bonami_check(one_plus_z);
  const double lhs_err = std::abs(a.lhs - std::sqrt(1.5));
  const double rhs_err = std::abs(a.rhs.estimate - 4.0 / std::numbers::pi);
  const bool pass = worst >= -margin_tol && lhs_err <= anchor_tol && rhs_err <= anchor_tol;
  return {pass, fmt("min margin %.3e; 1+z: lhs %.7f rhs %.7f", worst, a.lhs, a.rhs.estimate)};
}

// A4
Outcome hypercontractive() {
  constexpr double tol = 1e-6;
  double worst = 1e300;
  for (int s = 0; s < 200; ++s) {
    const int m = 1 + s % 4;
    const int n = 1 + (s / 4) % 3;
    const auto p = random_polynomial(m, n, Ensemble::steinhaus, 4000 + s);
    const auto r = hypercontractive_l2_l1_check(p);
    worst = std::min(worst, r.bound + tol - r.ratio);
  }
  return {worst >= 0.0, fmt("min slack over tolerance %.3e", worst)};
}

// A5
Outcome blei() {
  constexpr double margin_tol = 1e-9;
  constexpr double equality_tol = 1e-12;
  double worst = 1e300;
  for (int s = 0; s < 500; ++s) {
    const int m = 1 + s % 4;
    const int n = 1 + (s / 4) % 4;
    worst = std::min(worst, blei_check(random_tensor(m, n, 5000 + s)).margin);
  }
  const MultilinearTensor ones(2, 2, std::vector<Complex>(4, 1.0));
  const auto e = blei_check(ones);
  const double target = 2.0 * std::numbers::sqrt2;
  const bool eq = std::abs(e.lhs - target) <= equality_tol && std::abs(e.rhs - target) <= equality_tol;
  return {worst >= -margin_tol && eq,
          fmt("min margin %.3e; all-ones lhs %.15f rhs %.15f", worst, e.lhs, e.rhs)};
}

// A6
Outcome multilinear_search() {
  const double hi = std::numbers::sqrt2 + 1e-3;
  Outcome o;
  for (int n : {2, 3}) {
    const auto r = extremal_search(SearchObjective::bh_multilinear, 2, n, {64, 500}, 6);
    o.pass = o.pass && r.ratio >= 1.0 && r.ratio <= hi;
    o.detail += fmt("n=%d ratio %.6f; ", n, r.ratio);
  }
  o.detail += fmt("band [1, %.6f]", hi);
  return o;
}

// A7
Outcome poly_search() {
  Outcome o;
  const double s2 = constant_row(2).step4;
  o.pass = s2 == 4.0;
  o.detail = fmt("step4(2) = %.17g; ", s2);
  for (int m : {2, 3}) {
    const double cap = constant_row(m).step4 * 1.001;
    double worst = 0.0;
    bool converged = true;
    for (int n = 1; n <= 4; ++n) {
      const auto r = extremal_search(SearchObjective::bh_poly, m, n, {16, 200}, 7);
      worst = std::max(worst, r.ratio);
      converged = converged && r.denominator.converged;
      o.pass = o.pass && r.ratio <= cap && r.denominator.converged;
    }
    o.detail += fmt("m=%d max ratio %.4f cap %.4f%s; ", m, worst, cap, converged ? "" : " (unconverged)");
  }
  return o;
}

// A8
Outcome bohr_disc() {
  const auto lower = bohr_lower_bound(BallSpec(1, kInf));
  FamilySpec family;
  family.moebius_a = {0.5, 0.7, 0.9, 0.95, 0.99};
  family.degree = 80;
  const auto upper = bohr_upper_bound(BallSpec(1, kInf), family);
  double worst = 1e300;
  for (int s = 0; s < 200; ++s) {
    const int degree = 1 + s % 10;
    const auto f = random_graded_polynomial(degree, 1, static_cast<Ensemble>(s % 3), 8000 + s);
    OptimizerSpec opt;
    opt.seed = 8000 + s;
    worst = std::min(worst, per_function_radius(f, BallSpec(1, kInf), opt).radius);
  }
  const bool pass = lower.radius == 1.0 / 3.0 && upper.radius <= 0.36 && worst >= 1.0 / 3.0 - 1e-3;
  return {pass, fmt("lower %.17g; moebius upper %.6f; min per-function radius %.6f", lower.radius,
                    upper.radius, worst)};
}

// A9
Outcome lower_shape() {
  constexpr double band = 4.0;
  double lo = 1e300;
  double hi = 0.0;
  std::string detail;
  for (int n : {16, 64, 256, 1024, 4096}) {
    const double r = bohr_lower_bound(BallSpec(n, kInf)).radius;
    const double q = r / std::sqrt(std::log(n) / n);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    detail += fmt("n=%d %.4f; ", n, q);
  }
  detail += fmt("spread %.4f (band %.0f)", hi / lo, band);
  return {hi / lo <= band && lo > 0.0, detail};
}

// A10
Outcome combinatorics() {
  bool pass = true;
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; n <= 8; ++n)
      pass = pass && dimension(m, n) == enumerate_exponents(m, n).size();
  for (int m = 1; m <= 7; ++m)
    for (int n = 1; n <= 7; ++n) {
      std::uint64_t sum = 0;
      for (const auto& a : enumerate_exponents(m, n))
        sum += class_cardinality(a);
      pass = pass && sum == tuple_count(m, n);
    }
  // brute-force class sizes: count distinct orderings of each sorted tuple
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 4; ++n)
      for (const auto& a : enumerate_exponents(m, n)) {
        const auto j = exponent_to_tuple(a);
        std::vector<int> e(j.entries().begin(), j.entries().end());
        std::uint64_t perms = 0;
        do
          ++perms;
        while (std::next_permutation(e.begin(), e.end()));
        pass = pass && perms == class_cardinality(a);
      }
  return {pass, "dimension, class sums and permutation counts"};
}

// A11
Outcome polarization() {
  constexpr double tol = 1e-3;
  double worst_low = 1e300;
  double worst_high = 1e300;
  for (int s = 0; s < 18; ++s) {
    const int m = 1 + s % 3;
    const int n = 1 + (s / 3) % 3;
    const auto p = random_polynomial(m, n, static_cast<Ensemble>(s % 3), 11000 + s);
    OptimizerSpec opt;
    opt.restarts = 32;
    opt.seed = 11000 + s;
    const double sp = sup_norm_polydisc(p, opt).lower;
    const double sa = sup_norm_multilinear(polarize(p), opt).lower;
    const double factor = std::exp(log_polarization_factor(m));
    worst_low = std::min(worst_low, sa / (sp * (1.0 - tol)) - 1.0);
    worst_high = std::min(worst_high, factor * sp * (1.0 + tol) / sa - 1.0);
  }
  return {worst_low >= 0.0 && worst_high >= 0.0,
          fmt("min relative slack below %.3e above %.3e", worst_low, worst_high)};
}

// A12
Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "bhlab-acceptance";
  std::filesystem::remove_all(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"dim", "--m", "3", "--n", "4"},
      {"bh-verify", "--m", "2", "--n", "3", "--trials", "4"},
      {"bh-search", "--m", "2", "--n", "2", "--budget", "4x30"},
      {"blei", "--m", "3", "--n", "3", "--trials", "40"},
      {"bonami", "--degree", "6", "--trials", "40"},
      {"hyper", "--m", "2", "--n", "2", "--trials", "10"},
      {"sidon", "--m", "2", "--n", "2", "--budget", "4x30"},
      {"constants", "--m", "12"},
      {"chi-bound", "--m", "3", "--n", "4", "--p", "2"},
      {"bohr-lower", "--n", "64"},
      {"bohr-upper", "--n", "2", "--family", "random-graded", "--budget", "4x10"},
      {"bohr-check", "--n", "2"},
  };
  Outcome o;
  int checked = 0;
  auto invoke = [&](std::vector<std::string> args, const std::string& threads, std::string sub) {
    args.insert(args.end(), {"--seed", "3", "--format", "json", "--threads", threads, "--out",
                             (dir / sub).string()});
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  for (const auto& args : commands) {
    const auto a = invoke(args, "1", "a");
    const auto b = invoke(args, "1", "b");
    const auto c = invoke(args, "3", "c");
    auto value = [](const std::string& text) { return Json::parse(text).at("value").get<double>(); };
    const bool same = a.first == 0 && b.first == 0 && c.first == 0 && value(a.second) == value(b.second) &&
                      value(a.second) == value(c.second);
    if (!same) {
      o.pass = false;
      o.detail += args[0] + " differs; ";
    }
    ++checked;
  }
  std::ostringstream ra, rb, err;
  const int ca = cli::run({"report", "--out", (dir / "a").string()}, ra, err);
  const int cb = cli::run({"report", "--out", (dir / "b").string()}, rb, err);
  if (ca != 0 || cb != 0 || ra.str() != rb.str()) {
    o.pass = false;
    o.detail += "report differs; ";
  }
  ++checked;
  o.detail += fmt("%d subcommands checked twice at 1 thread and once at 3", checked);
  std::filesystem::remove_all(dir);
  return o;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"A1", "Parseval exactness", 5, parseval},
      {"A2", "linear forms have ratio 1", 10, littlewood_linear},
      {"A3", "Bonami one-variable inequality", 60, bonami},
      {"A4", "L2 <= sqrt2^m L1", 120, hypercontractive},
      {"A5", "Blei inequality", 30, blei},
      {"A6", "bilinear search within sqrt2", 300, multilinear_search},
      {"A7", "polynomial search below step4", 600, poly_search},
      {"A8", "disc Bohr radius anchors", 180, bohr_disc},
      {"A9", "lower bound shape", 60, lower_shape},
      {"A10", "combinatorial identities", 5, combinatorics},
      {"A11", "polarization sandwich", 300, polarization},
      {"A12", "CLI determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass)
      ++failures;
    std::printf("%s %-4s %-34s %8.2fs (budget %4.0fs)  %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), secs, c.budget_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
