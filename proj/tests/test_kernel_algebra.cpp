#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/inclusion_engine.hpp"
#include "rkhs/kernel_algebra.hpp"
#include "rkhs/kernel_catalog.hpp"
#include "rkhs/psd_certifier.hpp"

using namespace rkhs;
namespace K = rkhs::kernels;

namespace {

InclusionVerdict inc(double l, LambdaKind kind = LambdaKind::Exact) {
  InclusionVerdict v;
  v.relation = Relation::Included;
  v.lambda = {kind, l};
  v.method = Method::ClosedForm;
  return v;
}

InclusionVerdict refuted() {
  InclusionVerdict v;
  v.relation = Relation::NotIncluded;
  v.lambda = Lambda::unbounded();
  return v;
}

Point concat(const Point& a, const Point& b) {
  Point p(a.size() + b.size());
  p << a, b;
  return p;
}

}  // namespace

TEST_CASE("combine_sum") {
  auto v = combine_sum(inc(2.0), inc(3.0));
  CHECK(v.relation == Relation::Included);
  CHECK(v.lambda == Lambda::upper(3.0));
  REQUIRE(v.provenance);
  CHECK(v.provenance->rule == "sum");
  CHECK(v.provenance->inputs.size() == 2);

  CHECK(combine_sum(inc(1.0), inc(1.0)).lambda == Lambda::upper(1.0));
  CHECK(combine_sum(inc(1.0), refuted()).relation == Relation::Unknown);

  const auto d = decide(K::sum({K::gaussian(2, 1), K::gaussian(4, 1)}), K::sum({K::gaussian(1, 1), K::gaussian(2, 1)}));
  CHECK(d.relation == Relation::Included);
  CHECK(d.lambda.kind == LambdaKind::UpperBound);
  CHECK(d.lambda.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("combine_sum_same_target") {
  CHECK(combine_sum_same_target(inc(1.0), inc(1.0)).lambda == Lambda::upper(2.0));
  CHECK(combine_sum_same_target(inc(0.5), inc(0.25)).lambda == Lambda::upper(0.75));
  CHECK(combine_sum_same_target(inc(0.5), refuted()).relation == Relation::Unknown);
  // exact value for K1 = K2 = G is 2: 2G << lambda G first at lambda = 2
  const auto g = K::gaussian(1.0, 2);
  SamplerConfig cfg;
  cfg.n_trials = 20;
  CHECK(pass_fraction(certify(K::sum({g, g}), g, 2.0 * (1 + 1e-6), cfg)) == 1.0);
  CHECK(pass_fraction(certify(K::sum({g, g}), g, 1.99, cfg)) == 0.0);
}

TEST_CASE("combine_scale") {
  CHECK(combine_scale(3.0, 3.0, inc(1.7)).lambda == Lambda::exact(1.7));
  CHECK(combine_scale(4.0, 2.0, inc(3.0)).lambda == Lambda::exact(6.0));
  CHECK(combine_scale(1.0, 10.0, inc(5.0)).lambda == Lambda::exact(0.5));
  CHECK(combine_scale(2.0, 1.0, inc(1.0, LambdaKind::UpperBound)).lambda == Lambda::upper(2.0));
  CHECK(combine_scale(2.0, 1.0, refuted()).relation == Relation::NotIncluded);
  CHECK_THROWS_AS(combine_scale(0.0, 1.0, inc(1.0)), DomainError);
}

TEST_CASE("combine_scale is a group action") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const double a = u(rng), b = u(rng), a2 = u(rng), b2 = u(rng), l = u(rng);
    const auto two = combine_scale(a2, b2, combine_scale(a, b, inc(l)));
    const auto one = combine_scale(a * a2, b * b2, inc(l));
    CHECK(two.lambda.kind == one.lambda.kind);
    CHECK(two.lambda.value == doctest::Approx(one.lambda.value).epsilon(1e-14));
  }
}

TEST_CASE("combine_product and combine_tensor") {
  CHECK(combine_product(inc(2.0), inc(3.0)).lambda == Lambda::upper(6.0));
  CHECK(combine_tensor(inc(2.0), inc(3.0)).lambda == Lambda::upper(6.0));
  CHECK(combine_tensor(inc(1.0), inc(1.0)).lambda == Lambda::upper(1.0));
  CHECK(combine_product(refuted(), inc(1.0)).relation == Relation::Unknown);

  const auto t = decide(K::tensor(K::gaussian(2, 1), K::gaussian(2, 1)), K::tensor(K::gaussian(1, 1), K::gaussian(1, 1)));
  CHECK(t.lambda.kind == LambdaKind::UpperBound);
  CHECK(t.lambda.value == doctest::Approx(2.0).epsilon(1e-15));
  const auto g2 = decide(K::gaussian(2, 2), K::gaussian(1, 2));
  CHECK(g2.lambda == Lambda::exact(2.0));
  CHECK(K::tensor(K::gaussian(2, 1), K::gaussian(3, 2)).dim == 3);
}

TEST_CASE("tensor of Gaussians is the higher-dimensional Gaussian") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 2.0);
  const auto t = K::tensor(K::gaussian(2, 1), K::gaussian(2, 1));
  const auto g = K::gaussian(2, 2);
  for (int i = 0; i < 1000; ++i) {
    Point x(2), y(2);
    x << n(rng), n(rng);
    y << n(rng), n(rng);
    CHECK(eval(t, x, y) == doctest::Approx(eval(g, x, y)).epsilon(1e-14));
  }
}

TEST_CASE("product and tensor agree on the diagonal") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.5);
  const std::vector<std::pair<KernelSpec, KernelSpec>> pairs = {
      {K::gaussian(1.5, 2), K::exp_l1(2.0, 2)},
      {K::inverse_multiquadric(1.5, 2), K::bspline(4, 2)},
      {K::exp_l2(0.7, 1), K::sinc(1)},
  };
  for (const auto& [k1, k2] : pairs) {
    const auto p = K::product(k1, k2);
    const auto t = K::tensor(k1, k2);
    for (int i = 0; i < 300; ++i) {
      Point x(k1.dim), y(k1.dim);
      for (int j = 0; j < k1.dim; ++j) {
        x(j) = n(rng);
        y(j) = n(rng);
      }
      CHECK(eval(p, x, y) == doctest::Approx(eval(t, concat(x, x), concat(y, y))).epsilon(1e-14));
    }
  }
}

TEST_CASE("combine_exp") {
  const auto g = K::gaussian(1, 2);
  auto c = combine_exp(g, g, decide(g, g));
  CHECK(c.plain.relation == Relation::Equal);

  const auto k = K::scaled(0.5, g);
  const auto v = decide(k, g);
  REQUIRE(v.lambda.value == doctest::Approx(0.5));
  c = combine_exp(k, g, v);
  CHECK(c.plain.relation == Relation::Included);
  CHECK(c.scaled.relation == Relation::Included);

  const auto k2 = K::gaussian(2, 2);
  c = combine_exp(k2, g, decide(k2, g));
  CHECK(c.scaled.relation == Relation::Included);
  CHECK(c.scaled.lambda == Lambda::upper(1.0));
  CHECK(c.g_scaled == K::exp_composed(K::scaled(2.0, g)));
  CHECK(c.plain.relation == Relation::Unknown);

  CHECK(combine_exp(k2, g, refuted()).scaled.relation == Relation::Unknown);

  // e^K << e^{lambda G} checked empirically
  SamplerConfig cfg;
  cfg.n_trials = 20;
  cfg.box_radius = 2.0;
  CHECK(pass_fraction(certify(c.k, c.g_scaled, 1.0 + 1e-6, cfg)) == 1.0);
}

TEST_CASE("combine_series") {
  const auto g = K::gaussian(1, 1), k = K::scaled(0.5, g);
  const auto v = decide(k, g);
  std::vector<double> inv_fact(20);
  for (int j = 0; j < 20; ++j) inv_fact[j] = 1.0 / std::tgamma(j + 1.0);
  const auto s = combine_series(inv_fact, k, g, v);
  const auto e = combine_exp(k, g, v);
  CHECK(s.plain.relation == e.plain.relation);
  CHECK(s.scaled.lambda == e.scaled.lambda);
  Point x(1), y(1);
  x << 0.3;
  y << -0.4;
  CHECK(eval(s.k, x, y) == doctest::Approx(eval(e.k, x, y)).epsilon(1e-14));

  const auto lin = combine_series({1.0, 1.0}, k, g, v);
  CHECK(lin.plain.relation == Relation::Included);
  CHECK(eval(lin.k, x, y) == doctest::Approx(1.0 + eval(k, x, y)).epsilon(1e-15));
  CHECK_THROWS_AS(combine_series({1.0, -0.5}, k, g, v), NegativeCoefficient);
}

TEST_CASE("combine_limit") {
  CHECK(combine_limit(std::vector<InclusionVerdict>(5, inc(2.5))).lambda == Lambda::upper(2.5));
  std::vector<InclusionVerdict> seq;
  for (int j = 1; j <= 100; ++j) seq.push_back(inc(1.0 - 1.0 / j));
  CHECK(combine_limit(seq).lambda.value <= 1.0);

  const auto up = combine_limit([](long long j) { return inc(1.0 - 1.0 / static_cast<double>(j)); });
  CHECK(up.relation == Relation::Included);
  CHECK(up.lambda.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(combine_limit([](long long) { return inc(3.0); }).lambda == Lambda::upper(3.0));
  CHECK(combine_limit([](long long j) { return inc(static_cast<double>(j)); }).relation == Relation::Unknown);
  CHECK(combine_limit(std::vector<InclusionVerdict>{inc(1.0), refuted()}).relation == Relation::Unknown);
}

TEST_CASE("propagated constants on composed Gaussian pairs pass PSD certification") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> dim(1, 3), depth(1, 2);
  SamplerConfig cfg;
  cfg.n_trials = 20;
  for (int t = 0; t < 50; ++t) {
    const auto [k, g] = gen::composed_pair(rng, dim(rng), depth(rng));
    const auto v = decide(k, g);
    INFO(describe(k) << " vs " << describe(g));
    REQUIRE(v.included());
    CHECK(v.lambda.has_value());
    cfg.rng_seed = t;
    CHECK(pass_fraction(certify(k, g, v.lambda.value * (1 + 1e-6), cfg)) == 1.0);
  }
}

TEST_CASE("Schur product of PSD matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 8), rank(1, 8);
  std::normal_distribution<double> n;
  for (int t = 0; t < 1000; ++t) {
    const int m = size(rng);
    auto rnd = [&] {
      Eigen::MatrixXd f(m, rank(rng));
      for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = n(rng);
      return Eigen::MatrixXd(f * f.transpose());
    };
    const Eigen::MatrixXd a = rnd(), b = rnd();
    const Eigen::MatrixXd h = a.cwiseProduct(b);
    const double scale = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    CHECK(oracle::min_eig(h) >= -1e-10 * scale);
  }
}
