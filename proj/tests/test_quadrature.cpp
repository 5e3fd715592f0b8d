#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "starorlicz/errors.hpp"
#include "starorlicz/quadrature.hpp"

using namespace starorlicz;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(UnitBall, KnownVolumes) {
  EXPECT_NEAR(unit_ball_volume(2), pi, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * pi / 3.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(4), pi * pi / 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(5), 8.0 * pi * pi / 15.0, 1e-14);
}

TEST(GaussLegendre, ExactForPolynomials) {
  std::vector<double> x, w;
  for (std::size_t m : {1u, 2u, 5u, 16u, 64u}) {
    gauss_legendre(m, x, w);
    ASSERT_EQ(x.size(), m);
    for (std::size_t k = 0; 2 * k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += w[i] * std::pow(x[i], 2.0 * k);
      EXPECT_NEAR(s, 2.0 / (2.0 * k + 1.0), 1e-13) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Rules, WeightsSumToSphereArea) {
  for (const auto& rule : {circle_trapezoid(100), sphere_product_gauss(8, 16), monte_carlo(4, 1000, 3)}) {
    double s = 0.0;
    for (double w : rule.weights) s += w;
    const int n = rule.dimension;
    EXPECT_NEAR(s, n * unit_ball_volume(n), 1e-12) << to_string(rule.kind());
    EXPECT_EQ(rule.nodes.size(), rule.descriptor.N);
  }
}

TEST(Rules, DefaultsAndValidation) {
  EXPECT_EQ(make_rule(2).descriptor.N, 2048u);
  EXPECT_EQ(make_rule(3).descriptor.n_theta, 64u);
  EXPECT_EQ(make_rule(3).descriptor.n_phi, 128u);
  EXPECT_EQ(make_rule(4).kind(), RuleKind::MonteCarlo);
  EXPECT_STREQ(make_rule(2).error_model(), "spectral");
  EXPECT_THROW(circle_trapezoid(0), InvalidArgument);
}

TEST(Volume, EllipsesAndEllipsoids) {
  EXPECT_NEAR(volume(ellipsoid_axes({2.0, 0.5}), make_rule(2)).value, pi, 1e-12);
  EXPECT_NEAR(volume(ellipsoid_axes({1.5, 0.8, 1.2}), make_rule(3)).value, 4.0 * pi / 3.0 * 1.44,
              1e-6);
  EXPECT_NEAR(volume(ball(3, 2.0), make_rule(3)).value, 32.0 * pi / 3.0, 1e-9);
}

TEST(Volume, DiamondAlgebraicConvergence) {
  // |l_1 ball| = 2; the radial function has kinks so the error estimate matters.
  const auto v = volume(lp_ball(2, 1.0), circle_trapezoid(1000));
  EXPECT_LE(std::abs(v.value - 2.0), std::max(v.error_estimate, 1e-14));
}

TEST(Volume, ErrorEstimateCoversEllipses) {
  for (double a : {1.5, 3.0, 6.0}) {
    const auto v = volume(ellipsoid_axes({a, 1.0}), circle_trapezoid(64));
    EXPECT_LE(std::abs(v.value - pi * a), v.error_estimate) << a;
  }
}

TEST(MonteCarlo, SeedDeterministicAndErrorCalibrated) {
  const auto K = ellipsoid_axes({1.3, 0.9, 1.1, 0.8});
  const auto a = volume(K, monte_carlo(4, 20000, 11));
  const auto b = volume(K, monte_carlo(4, 20000, 11));
  EXPECT_EQ(a.value, b.value);
  const double exact = pi * pi / 2.0 * 1.3 * 0.9 * 1.1 * 0.8;
  EXPECT_LE(std::abs(a.value - exact), 5.0 * a.error_estimate);
  EXPECT_GT(a.error_estimate, 0.0);
  EXPECT_EQ(a.rule.seed, 11u);
}

TEST(Integrate, ConstantIsSphereArea) {
  const auto rule = make_rule(3);
  const auto v = integrate([](const Direction&) { return 1.0; }, rule);
  EXPECT_NEAR(v.value, 4.0 * pi, 1e-12);
}

TEST(Integrate, ThreadCountDoesNotChangeResult) {
  const auto K = apply_linear(LinearMap::from_rows({{1.0, 0.4}, {0.1, 0.9}}), lp_ball(2, 3.0));
  ::setenv("STAR_ORLICZ_THREADS", "1", 1);
  const double one = volume(K, make_rule(2)).value;
  ::setenv("STAR_ORLICZ_THREADS", "4", 1);
  const double four = volume(K, make_rule(2)).value;
  ::unsetenv("STAR_ORLICZ_THREADS");
  EXPECT_EQ(one, four);
}

TEST(BallEquivalent, SameVolume) {
  const auto rule = make_rule(3);
  const auto K = ellipsoid_axes({1.5, 0.8, 1.2});
  const auto BK = ball_equivalent(K, rule);
  EXPECT_NEAR(volume(BK, rule).value, volume(K, rule).value, 1e-12);
  ASSERT_NE(BK.as<node::Ball>(), nullptr);
}
