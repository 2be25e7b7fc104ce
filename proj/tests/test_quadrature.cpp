#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/quadrature.hpp"

using namespace rkhs;

TEST_CASE("integrate_exp on elementary integrals") {
  QuadratureConfig cfg;
  // int_0^1 x^2 dx
  auto r = integrate_exp([](double x) { return 2.0 * std::log(x); }, 0.0, 1.0, 0.0, cfg);
  CHECK(std::exp(r.log_value) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // int_0^pi sin
  r = integrate_exp([](double x) { return std::log(std::sin(x)); }, 0.0, oracle::pi, 0.0, cfg, 4);
  CHECK(std::exp(r.log_value) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rel_error < 1e-10);
}

TEST_CASE("integrate_unimodal on infinite ranges, far outside the double range") {
  QuadratureConfig cfg;
  const double inf = std::numeric_limits<double>::infinity();
  auto r = integrate_unimodal([](double x) { return -x * x; }, 0.0, 1.0, -inf, inf, cfg);
  CHECK(r.log_value == doctest::Approx(0.5 * std::log(oracle::pi)).epsilon(1e-12));
  r = integrate_unimodal([](double x) { return 5000.0 - (x - 3.0) * (x - 3.0); }, 3.0, 1.0, -inf, inf, cfg);
  CHECK(r.log_value == doctest::Approx(5000.0 + 0.5 * std::log(oracle::pi)).epsilon(1e-14));
  // one-sided: int_0^inf e^{-x} = 1
  r = integrate_unimodal([](double x) { return -x; }, 0.0, 1.0, 0.0, inf, cfg);
  CHECK(std::exp(r.log_value) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-convergence is reported") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-15;
  cfg.max_subdivisions = 1;
  // a sharp spike resolved by a single panel cannot meet 1e-15
  auto spike = [](double x) { return -1e4 * (x - 0.123) * (x - 0.123); };
  CHECK_THROWS_AS(integrate_exp(spike, 0.0, 1.0, 0.0, cfg), ConvergenceError);
}
