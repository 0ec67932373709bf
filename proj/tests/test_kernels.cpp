#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bhlab/kernels.hpp"
#include "support.hpp"

using namespace bhlab;
using namespace bhlab::kernels;

namespace {

// Mean of |P|^p over the full grid computed straight from the sparse form.
double brute_power_mean(const PolynomialSparse& p, double power, int nodes) {
  const int n = p.dimension();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  double sum = 0.0;
  long count = 0;
  while (true) {
    for (int k = 0; k < n; ++k)
      z[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * idx[static_cast<std::size_t>(k)] / nodes);
    sum += std::pow(std::abs(oracle::naive_evaluate(p, z)), power);
    ++count;
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == nodes - 1) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0)
      break;
    ++idx[static_cast<std::size_t>(k)];
  }
  return sum / static_cast<double>(count);
}

} // namespace

TEST_CASE("abs_pow") {
  const Complex v(3.0, 4.0);
  CHECK(abs_pow(v, 2.0) == 25.0);
  CHECK(abs_pow(v, 4.0) == 625.0);
  CHECK(abs_pow(v, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(abs_pow(v, 1.5) == doctest::Approx(std::pow(5.0, 1.5)).epsilon(1e-14));
  CHECK(abs_pow(Complex{}, 1.0) == 0.0);
}

TEST_CASE("serial grid mean matches the oracle") {
  for (int s = 0; s < 6; ++s) {
    const auto p = random_polynomial(1 + s % 3, 1 + s % 3, static_cast<Ensemble>(s % 3), 60 + s);
    const DenseMonomials d(p);
    for (double power : {1.0, 2.0, 3.5, 4.0}) {
      const double ref = brute_power_mean(p, power, 9);
      CHECK(serial::torus_power_mean(d, power, 9, {}) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("parallel kernels match the serial reference and ignore the thread count") {
  for (int s = 0; s < 8; ++s) {
    const int m = 1 + s % 4;
    const int n = 1 + s % 3;
    const auto p = random_polynomial(m, n, static_cast<Ensemble>(s % 3), 300 + s);
    const DenseMonomials d(p);
    PinMask pin(static_cast<std::size_t>(n), 0);
    pin[0] = 1;
    for (const PinMask& mask : {PinMask{}, pin}) {
      for (double power : {1.0, 2.0, 3.5, 4.0}) {
        // row-wise summation differs from one running sum only by rounding
        const double ref = serial::torus_power_mean(d, power, 11, mask);
        const double one = omp::torus_power_mean(d, power, 11, mask, 1);
        CHECK(one == doctest::Approx(ref).epsilon(1e-13));
        for (int threads : {2, 3, 4})
          CHECK(omp::torus_power_mean(d, power, 11, mask, threads) == one);
      }
      const auto top = serial::grid_top_k(d, 13, mask, 5);
      const auto top1 = omp::grid_top_k(d, 13, mask, 5, 1);
      REQUIRE(top1.size() == top.size());
      for (std::size_t k = 0; k < top.size(); ++k) {
        CHECK(top1[k].value == doctest::Approx(top[k].value).epsilon(1e-13));
        std::vector<Complex> z;
        for (double t : top1[k].theta)
          z.push_back(std::polar(1.0, t));
        CHECK(top1[k].value == doctest::Approx(std::abs(p.evaluate(z))).epsilon(1e-12));
      }
      for (int threads : {2, 3}) {
        const auto par = omp::grid_top_k(d, 13, mask, 5, threads);
        REQUIRE(par.size() == top1.size());
        for (std::size_t k = 0; k < top1.size(); ++k) {
          CHECK(par[k].value == top1[k].value);
          CHECK(par[k].theta == top1[k].theta);
        }
      }
      const auto mc = serial::monte_carlo_power_mean(d, 1.0, 5000, 42, mask);
      const auto mc1 = omp::monte_carlo_power_mean(d, 1.0, 5000, 42, mask, 1);
      CHECK(mc1.mean == doctest::Approx(mc.mean).epsilon(1e-13));
      CHECK(mc1.std_error == doctest::Approx(mc.std_error).epsilon(1e-9));
      for (int threads : {2, 4}) {
        const auto pm = omp::monte_carlo_power_mean(d, 1.0, 5000, 42, mask, threads);
        CHECK(pm.mean == mc1.mean);
        CHECK(pm.std_error == mc1.std_error);
      }
    }
  }
}

TEST_CASE("grid_top_k orders by value and respects pins") {
  const auto p = random_polynomial(2, 2, Ensemble::steinhaus, 4);
  const DenseMonomials d(p);
  const PinMask pin{1, 0};
  const auto top = serial::grid_top_k(d, 16, pin, 8);
  REQUIRE(top.size() == 8);
  for (std::size_t k = 1; k < top.size(); ++k)
    CHECK(top[k - 1].value >= top[k].value);
  for (const auto& g : top) {
    CHECK(g.theta[0] == 0.0);
    std::vector<Complex> z{std::polar(1.0, g.theta[0]), std::polar(1.0, g.theta[1])};
    CHECK(g.value == doctest::Approx(std::abs(p.evaluate(z))).epsilon(1e-12));
  }
  // a pinned homogeneous grid sees the same best value as the full grid
  const auto full = serial::grid_top_k(d, 16, {}, 1);
  CHECK(full[0].value == doctest::Approx(top[0].value).epsilon(1e-12));
}

TEST_CASE("monte carlo estimate is consistent") {
  const auto p = random_polynomial(2, 2, Ensemble::gaussian, 8);
  const DenseMonomials d(p);
  const double exact = serial::torus_power_mean(d, 2.0, 5, {});
  const auto mc = serial::monte_carlo_power_mean(d, 2.0, 20000, 3, {});
  CHECK(std::abs(mc.mean - exact) < 5.0 * mc.std_error);
  CHECK(mc.std_error > 0.0);
  CHECK(mc_phase(3, 10, 1) == mc_phase(3, 10, 1));
  CHECK(mc_phase(3, 10, 1) != mc_phase(3, 11, 1));
  CHECK(mc_phase(3, 10, 1) >= 0.0);
  CHECK(mc_phase(3, 10, 1) < 2.0 * std::numbers::pi);
}
