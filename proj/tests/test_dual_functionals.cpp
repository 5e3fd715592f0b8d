#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "starorlicz/dual_functionals.hpp"
#include "starorlicz/errors.hpp"

using namespace starorlicz;

namespace {

double omega(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

StarBody body(int n) {
  if (n == 2) return apply_linear(LinearMap::from_rows({{1.2, 0.3}, {0.0, 0.8}}), lp_ball(2, 3.0));
  return ellipsoid_axes({1.4, 0.9, 0.7});
}

}  // namespace

TEST(MixedVolume, Anchors) {
  for (int n : {2, 3}) {
    const auto rule = make_rule(n);
    const auto K = body(n), L = ellipsoid_axes(std::vector<double>(static_cast<std::size_t>(n), 1.3));
    EXPECT_NEAR(dual_mixed_volume(make_constant(1.0), K, L, rule).value, volume(K, rule).value, 1e-12);
    EXPECT_NEAR(dual_mixed_volume(make_power(-n), K, L, rule).value, volume(L, rule).value, 1e-12);
  }
}

TEST(MixedVolume, BallFormula) {
  for (int n : {2, 3}) {
    for (double p : {-2.0, 0.5, 3.0}) {
      const double r = 1.7, s = 0.6;
      const double v = dual_mixed_volume(make_power(p), ball(n, r), ball(n, s), make_rule(n)).value;
      const double oracle = std::pow(r / s, p) * std::pow(r, n) * omega(n);
      EXPECT_NEAR(v, oracle, 1e-12 * oracle);
    }
  }
}

TEST(MixedVolume, ReportsRuleAndError) {
  const auto v = dual_mixed_volume(make_power(1.0), body(2), ball(2), make_rule(2));
  EXPECT_EQ(v.rule.kind, RuleKind::CircleTrapezoid);
  EXPECT_EQ(v.rule.N, 2048u);
  EXPECT_GE(v.error_estimate, 0.0);
  EXPECT_THROW(dual_mixed_volume(make_power(1.0), body(2), ball(3), make_rule(2)), InvalidArgument);
}

TEST(SurfaceArea, BallAndHomogeneity) {
  for (int n : {2, 3}) {
    const auto rule = make_rule(n);
    const auto phi = make_power(2.0);
    // S̃_φ(rB) = n ω_n r^n φ(r).
    const double r = 1.3;
    EXPECT_NEAR(dual_surface_area(phi, ball(n, r), rule).value, n * omega(n) * std::pow(r, n + 2.0),
                1e-10);
    const double base = dual_surface_area(phi, body(n), rule).value;
    const double scaled = dual_surface_area(phi, dilate(0.5, body(n)), rule).value;
    EXPECT_NEAR(scaled, std::pow(0.5, n + 2.0) * base, 1e-12 * base);
  }
}

TEST(MeanRadius, BallValue) {
  // ω̃_φ(rB) = φ(1/r).
  for (int n : {2, 3}) {
    const auto v = harmonic_mean_radius(make_power(-1.0), ball(n, 2.5), make_rule(n));
    EXPECT_NEAR(v.value, 2.5, 1e-12);
  }
  const auto t = harmonic_mean_radius(make_arctan_inverse_power(2.0), ball(2, 0.5), make_rule(2));
  EXPECT_NEAR(t.value, std::atan(0.25), 1e-14);
}

TEST(Extrapolation, ExactForQuadratics) {
  const std::vector<double> x{0.4, 0.2, 0.1};
  std::vector<double> y;
  for (double xi : x) y.push_back(1.0 + 2.0 * xi - 3.0 * xi * xi);
  EXPECT_NEAR(extrapolate_to_zero(x, y), 1.0, 1e-14);
}

TEST(FirstVariation, BallPairsBothSides) {
  // K = rB, L = sB: the quotient limit times φ'(1) equals φ₂(r/s) r^n ω_n.
  for (int n : {2, 3}) {
    for (double p : {1.0, 2.0, -1.0, -2.0}) {
      const auto phi = make_power(p);
      const auto est = first_variation(phi, phi, ball(n, 1.2), ball(n, 0.8), make_rule(n));
      const double oracle = std::pow(1.2 / 0.8, p) * std::pow(1.2, n) * omega(n);
      EXPECT_NEAR(est.target.value, oracle, 1e-10 * oracle);
      EXPECT_NEAR(est.product(), oracle, 1e-5 * oracle) << "n=" << n << " p=" << p;
      EXPECT_EQ(est.derivative.side, p > 0 ? Side::Left : Side::Right);
      EXPECT_EQ(est.quotients.size(), 3u);
    }
  }
}

TEST(FirstVariation, GeneralPair) {
  const auto one = make_power(1.0);
  const auto est = first_variation(one, make_power(2.0), body(2), ellipsoid_axes({0.9, 1.3}), make_rule(2));
  EXPECT_NEAR(est.product(), est.target.value, 1e-3 * est.target.value);
  EXPECT_LT(est.extrapolation_error, 1e-3 * est.target.value);
}

TEST(FirstVariation, RejectsMixedTagsAndBadSteps) {
  EXPECT_THROW(first_variation(make_power(1.0), make_power(-1.0), ball(2), ball(2), make_rule(2)),
               InvalidArgument);
  EXPECT_THROW(first_variation(make_power(1.0), make_power(1.0), ball(2), ball(2), make_rule(2), {0.01}),
               InvalidArgument);
  EXPECT_THROW(
      first_variation(make_power(1.0), make_power(1.0), ball(2), ball(2), make_rule(2), {0.01, 0.02}),
      InvalidArgument);
}

TEST(FirstVariation, StiffPairScalesSteps) {
  // κ = (r/s)^{-3} / 0.5 for φ₁ = t^{-1/2}, φ₂ = t^{-3} on balls.
  const auto phi1 = make_power(-0.5), phi2 = make_power(-3.0);
  const double r = 0.7, s = 1.4;
  const auto eps = scaled_epsilons(phi1, phi2, ball(3, r), ball(3, s), make_rule(3));
  const double kappa = std::pow(r / s, -3.0) / 0.5;
  ASSERT_EQ(eps.size(), default_epsilons().size());
  for (std::size_t i = 0; i < eps.size(); ++i) EXPECT_NEAR(eps[i], default_epsilons()[i] / kappa, 1e-15);
  const auto est = first_variation(phi1, phi2, ball(3, r), ball(3, s), make_rule(3));
  const double oracle = std::pow(r / s, -3.0) * std::pow(r, 3) * omega(3);
  EXPECT_NEAR(est.product(), oracle, 1e-5 * oracle);
  EXPECT_EQ(scaled_epsilons(make_power(1.0), make_power(1.0), ball(2), ball(2), make_rule(2)), default_epsilons());
}
