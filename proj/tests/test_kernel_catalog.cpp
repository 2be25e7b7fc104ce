#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/kernel_catalog.hpp"

using namespace rkhs;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

std::vector<double> vec(const Point& p) { return {p.data(), p.data() + p.size()}; }

std::vector<KernelSpec> catalog(int d) {
  return {kernels::gaussian(0.7, d),  kernels::exp_l1(1.3, d),    kernels::exp_l2(0.8, d),
          kernels::inverse_multiquadric(1.7, d), kernels::bspline(4, d), kernels::anova(1.2, d),
          kernels::sinc(d)};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("eval: closed-form examples") {
  CHECK(eval(kernels::gaussian(1.0, 2), pt({0.3, -1}), pt({0.3, -1})) == 1.0);
  CHECK(eval(kernels::exp_l1(1.0, 2), pt({1, 0}), pt({0, 0})) == doctest::Approx(std::exp(-1.0)));
  CHECK(eval(kernels::inverse_multiquadric(2.0, 3), pt({1, 1, 1}), pt({0, 0, 0})) == doctest::Approx(1.0 / 16.0));
  CHECK(eval(kernels::sinc(1), pt({0.5}), pt({0})) == doctest::Approx(2.0 / oracle::pi));
  CHECK(eval(kernels::anova(1.0, 2), pt({0, 0}), pt({0, 0})) == 2.0);
  CHECK_THROWS_AS(eval(kernels::gaussian(1.0, 2), pt({0}), pt({0, 0})), DimensionMismatch);
}

TEST_CASE("eval agrees with the oracle kernels") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.5);
  for (int d = 1; d <= 3; ++d) {
    for (int t = 0; t < 20; ++t) {
      Point x(d), y(d);
      for (int j = 0; j < d; ++j) x(j) = n(rng), y(j) = n(rng);
      const auto z = vec(x - y);
      CHECK(rel(eval(kernels::gaussian(0.7, d), x, y), oracle::gaussian_kernel(0.7, z)) < 1e-14);
      CHECK(rel(eval(kernels::exp_l1(1.3, d), x, y), oracle::expl1_kernel(1.3, z)) < 1e-14);
      CHECK(rel(eval(kernels::exp_l2(0.8, d), x, y), oracle::expl2_kernel(0.8, z)) < 1e-14);
      CHECK(rel(eval(kernels::inverse_multiquadric(1.7, d), x, y), oracle::imq_kernel(1.7, z)) < 1e-14);
      CHECK(eval(kernels::sinc(d), x, y) == doctest::Approx(oracle::sinc_kernel(z)).epsilon(1e-13));
    }
  }
}

TEST_CASE("eval: symmetry, positive diagonal, translation invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int d = 1; d <= 3; ++d) {
    for (const auto& k : catalog(d)) {
      for (int t = 0; t < 25; ++t) {
        Point x(d), y(d), a(d);
        for (int j = 0; j < d; ++j) x(j) = u(rng), y(j) = u(rng), a(j) = 10.0 * u(rng);
        CHECK(eval(k, x, y) == eval(k, y, x));
        CHECK(eval(k, x, x) > 0.0);
        CHECK(eval(k, x + a, y + a) == doctest::Approx(eval(k, x, y)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("cardinal B-spline: hat function and partition of unity") {
  CHECK(cardinal_bspline(2, 0.0) == doctest::Approx(1.0));
  CHECK(cardinal_bspline(2, 0.5) == doctest::Approx(0.5));
  CHECK(cardinal_bspline(2, 1.0) == 0.0);
  for (int p : {2, 4, 6}) {
    for (double t = -0.5; t <= 0.5; t += 0.13) {
      double s = 0.0;
      for (int k = -p; k <= p; ++k) s += cardinal_bspline(p, t + k);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(cardinal_bspline(4, 0.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("spectral densities: reference examples") {
  const double g = 2.3;
  for (int d = 1; d <= 3; ++d) {
    CHECK(rel(spectral_density(kernels::gaussian(g, d)).eval(Point::Zero(d)),
              std::pow(std::sqrt(g) / (2.0 * std::sqrt(oracle::pi)), d)) < 1e-14);
  }
  const auto s = spectral_density(kernels::sinc(1));
  CHECK(s.eval(pt({0.5})) == doctest::Approx(1.0 / (2.0 * oracle::pi)));
  CHECK(s.eval(pt({4.0})) == 0.0);
  CHECK(s.support == SupportKind::CompactSupport);
  CHECK(rel(spectral_density(kernels::exp_l2(1.0, 1)).eval(pt({0.0})), 1.0 / oracle::pi) < 1e-14);
}

TEST_CASE("spectral densities agree with the oracle closed forms") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int d = 1; d <= 3; ++d) {
    const auto G = spectral_density(kernels::gaussian(0.7, d));
    const auto E = spectral_density(kernels::exp_l1(1.3, d));
    const auto S = spectral_density(kernels::exp_l2(0.8, d));
    const auto B = spectral_density(kernels::bspline(4, d));
    const auto A = spectral_density(kernels::anova(1.2, d));
    const auto M = spectral_density(kernels::inverse_multiquadric(1.7, d));
    for (int t = 0; t < 10; ++t) {
      Point xi(d);
      for (int j = 0; j < d; ++j) xi(j) = n(rng);
      const auto v = vec(xi);
      CHECK(rel(G.eval(xi), oracle::gaussian_density(0.7, v)) < 1e-13);
      CHECK(rel(E.eval(xi), oracle::expl1_density(1.3, v)) < 1e-13);
      CHECK(rel(S.eval(xi), oracle::expl2_density(0.8, v)) < 1e-13);
      CHECK(rel(B.eval(xi), oracle::bspline_density(4, v)) < 1e-11);
      CHECK(rel(A.eval(xi), oracle::anova_density(1.2, v)) < 1e-13);
      // quadrature path vs Bessel closed form
      CHECK(rel(M.eval(xi), oracle::imq_density_bessel(1.7, v)) < 1e-6);
    }
  }
}

TEST_CASE("inverse multiquadric density at extreme frequencies") {
  // far tail: m ~ c r^{beta-(d+1)/2} e^{-r}; compare log values with the oracle
  const auto M = spectral_density(kernels::inverse_multiquadric(2.0, 2));
  const auto ld = M.log_density(pt({300.0, 400.0}));
  const double r = 500.0;
  const double ref = std::log(std::pow(2.0, -1.0) / (2.0 * oracle::pi)) + (2.0 - 1.0) * std::log(r) +
                     std::log(oracle::bessel_k(1.0, r, 200000));
  CHECK(ld.value() == doctest::Approx(ref).epsilon(1e-8));
  // origin: finite iff beta > d/2
  CHECK(std::isfinite(M.eval(Point::Zero(2))));
  const auto M0 = spectral_density(kernels::inverse_multiquadric(0.9, 2));
  CHECK(M0.log_density(Point::Zero(2)).lead == INFINITY);
}

TEST_CASE("spectral densities reproduce the kernels in d = 1") {
  // truncations chosen so that the density mass outside [-L, L] is below 1e-6
  struct Case {
    KernelSpec k;
    double L;
    long n;
  };
  const std::vector<Case> cases = {
      {kernels::gaussian(0.7, 1), 20.0, 4000},
      {kernels::exp_l1(1.3, 1), 5e5, 20000000},
      {kernels::exp_l2(0.8, 1), 8e5, 20000000},
      {kernels::inverse_multiquadric(1.7, 1), 40.0, 8000},
      {kernels::bspline(4, 1), 120.0, 48000},
      {kernels::anova(1.2, 1), 20.0, 4000},
      {kernels::sinc(1), oracle::pi, 4000},
  };
  for (const auto& c : cases) {
    const auto s = spectral_density(c.k);
    for (double z : {0.0, 0.4, 1.7}) {
      auto f = [&](double xi) { return std::cos(z * xi) * s.eval(pt({xi})); };
      const double v = oracle::simpson(f, -c.L, c.L, c.n);
      INFO(describe(c.k) << " z=" << z);
      CHECK(std::abs(v - eval(c.k, pt({z}), pt({0.0}))) < 1e-3);
    }
  }
}

TEST_CASE("support kinds, positivity, zero set, radial flag") {
  for (int d = 1; d <= 3; ++d) {
    for (const auto& k : catalog(d)) {
      const auto s = spectral_density(k);
      Point xi = Point::Constant(d, 0.37);
      CHECK(s.eval(xi) > 0.0);
      if (k.family() == Family::BSpline) {
        CHECK(s.support == SupportKind::ZeroSet);
        CHECK_FALSE(s.zero_probes.empty());
        for (const auto& z : s.zero_probes) CHECK(s.eval(z) == 0.0);
        Point e = Point::Zero(d);
        e(0) = 2.0 * oracle::pi;
        CHECK(s.eval(e) == 0.0);
      } else if (k.family() == Family::Sinc) {
        CHECK(s.support == SupportKind::CompactSupport);
        CHECK(s.box_half_width == doctest::Approx(oracle::pi));
      } else {
        CHECK(s.support == SupportKind::EverywherePositive);
        CHECK(s.eval(Point::Constant(d, 25.0)) > 0.0);
      }
      const bool radial_family = k.family() == Family::Gaussian || k.family() == Family::ExpL2 ||
                                 k.family() == Family::InverseMultiquadric;
      if (radial_family) {
        CHECK(s.radial);
        Point a = Point::Zero(d), b = Point::Constant(d, 1.3 / std::sqrt(d));
        a(0) = 1.3;
        CHECK(s.eval(a) == doctest::Approx(s.eval(b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("densities of sums and scalings; unsupported combinators") {
  const auto k = kernels::sum({kernels::gaussian(1.0, 2), kernels::scaled(3.0, kernels::exp_l1(0.5, 2))});
  const auto s = spectral_density(k);
  const Point xi = pt({0.4, -1.1});
  const double ref = oracle::gaussian_density(1.0, vec(xi)) + 3.0 * oracle::expl1_density(0.5, vec(xi));
  CHECK(rel(s.eval(xi), ref) < 1e-13);
  // the Gaussian term underflows far out; the log-sum-exp keeps the E term
  const Point far = pt({100.0, 90.0});
  CHECK(rel(s.eval(far), 3.0 * oracle::expl1_density(0.5, vec(far))) < 1e-12);

  const auto g = kernels::gaussian(1.0, 1);
  CHECK_THROWS_AS(spectral_density(kernels::product(g, g)), UnsupportedFamily);
  CHECK_THROWS_AS(spectral_density(kernels::tensor(g, g)), UnsupportedFamily);
  CHECK_THROWS_AS(spectral_density(kernels::exp_composed(g)), UnsupportedFamily);
  HsKernel h{CoefficientSequence::finite({1.0, 0.5}), FeatureSequence::monomials()};
  CHECK_THROWS_AS(spectral_density(kernels::hilbert_schmidt(h, 1)), UnsupportedFamily);
}

TEST_CASE("Laplace representations") {
  auto g = laplace_representation(kernels::gaussian(2.0, 3));
  CHECK(g.kind == LaplaceKind::Atomic);
  CHECK(g.location == 0.5);
  CHECK(g.mass == 1.0);
  auto m = laplace_representation(kernels::inverse_multiquadric(1.0, 2));
  CHECK(m.kind == LaplaceKind::Density);
  for (double t : {0.1, 1.0, 4.0}) CHECK(m.density(t) == doctest::Approx(std::exp(-t)));
  auto e = laplace_representation(kernels::exp_l2(0.5, 1));
  CHECK(e.density(1.0) == doctest::Approx(std::exp(-1.0) / std::sqrt(oracle::pi)));
  CHECK_THROWS_AS(laplace_representation(kernels::exp_l1(1.0, 1)), UnsupportedFamily);
  CHECK_THROWS_AS(laplace_representation(kernels::sinc(1)), UnsupportedFamily);

  // int_0^inf e^{-t r^2} dmu(t) reproduces the kernel (t = e^u, trapezoid)
  for (const auto& k : {kernels::exp_l2(0.8, 2), kernels::inverse_multiquadric(1.7, 2)}) {
    const auto rep = laplace_representation(k);
    for (double r : {0.3, 1.0, 2.5}) {
      auto f = [&](double u) {
        const double t = std::exp(u);
        return std::exp(-t * r * r) * rep.density(t) * t;
      };
      const double v = oracle::trapezoid(f, -60.0, 8.0, 200000);
      CHECK(v == doctest::Approx(eval(k, pt({r, 0.0}), pt({0.0, 0.0}))).epsilon(1e-8));
    }
  }
}
