#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "starorlicz/errors.hpp"
#include "starorlicz/orlicz_functions.hpp"
#include "starorlicz/probes.hpp"

using namespace starorlicz;

TEST(Power, ValuesAndTags) {
  const auto f = make_power(2.5);
  EXPECT_DOUBLE_EQ(f(3.0), std::pow(3.0, 2.5));
  EXPECT_EQ(f.tag(), UnivariateClass::PhiTilde1);
  EXPECT_EQ(make_power(-1.5).tag(), UnivariateClass::PsiTilde1);
  EXPECT_THROW(make_power(0.0), InvalidArgument);
  EXPECT_THROW(make_power(std::nan("")), InvalidArgument);
}

TEST(Constant, RejectsNonPositive) {
  EXPECT_EQ(make_constant(2.0)(7.0), 2.0);
  EXPECT_THROW(make_constant(0.0), InvalidArgument);
}

TEST(PowerSum, ValuesAndClass) {
  const auto inc = make_power_sum(2.0, 2, PowerForm::Increasing);
  const auto dec = make_power_sum(2.0, 2, PowerForm::Decreasing);
  EXPECT_DOUBLE_EQ(inc(3.0, 4.0), 25.0);
  EXPECT_DOUBLE_EQ(dec(2.0, 4.0), 0.25 + 0.0625);
  EXPECT_EQ(inc.tag(), BivariateClass::PhiTilde);
  EXPECT_EQ(dec.tag(), BivariateClass::PsiTilde);
  EXPECT_THROW(make_power_sum(0.0, 2, PowerForm::Increasing), InvalidArgument);
}

TEST(WeightedSum, RequiresMatchingTags) {
  const auto w = make_weighted_sum(1.0, 1.0, make_power(1.0), make_power(3.0));
  EXPECT_DOUBLE_EQ(w(2.0, 0.5), 2.0 + 0.125);
  EXPECT_THROW(make_weighted_sum(1.0, 1.0, make_power(1.0), make_power(-1.0)), InvalidArgument);
}

TEST(Tilde, ReciprocalArguments) {
  const auto phi = make_weighted_sum(1.0, 1.0, make_power(1.0), make_power(2.0));
  const auto t = tilde(phi);
  EXPECT_EQ(t.tag(), BivariateClass::PsiTilde);
  for (double x : {0.3, 1.0, 4.0}) {
    for (double y : {0.2, 2.0}) EXPECT_NEAR(t(x, y), 1.0 / x + 1.0 / (y * y), 1e-15 * t(x, y));
  }
  const auto back = tilde(t);
  EXPECT_DOUBLE_EQ(back(0.7, 1.3), phi(0.7, 1.3));
  const auto u = tilde(make_power(3.0));
  EXPECT_DOUBLE_EQ(u(2.0), 0.125);
  EXPECT_EQ(u.tag(), UnivariateClass::PsiTilde1);
}

TEST(Tilde, PowerSumFlipsForm) {
  const auto t = tilde(make_power_sum(1.5, 2, PowerForm::Increasing));
  const auto* d = std::get_if<descriptor::PowerSum>(&t.descriptor());
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->form, PowerForm::Decreasing);
}

TEST(Validate, PowerSumsPass) {
  for (double p : {0.3, 1.0, 2.0, 7.0}) {
    EXPECT_TRUE(validate_class(make_power_sum(p, 2, PowerForm::Increasing)).ok()) << p;
    EXPECT_TRUE(validate_class(make_power_sum(p, 2, PowerForm::Decreasing)).ok()) << p;
    EXPECT_TRUE(validate_class(make_power_sum(p, 3, PowerForm::Increasing)).ok()) << p;
  }
}

TEST(Validate, NormalizationViolation) {
  const auto bad = make_custom_bivariate("2x+y", 2, BivariateClass::PhiTilde,
                                         [](std::span<const double> x) { return 2 * x[0] + x[1]; });
  const auto report = validate_class(bad);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has(Violation::Kind::Normalization, 1));
  EXPECT_FALSE(report.has(Violation::Kind::Normalization, 2));
}

TEST(Validate, MonotonicityViolation) {
  const auto bad = make_custom_bivariate(
      "x+y-0.9xy", 2, BivariateClass::PhiTilde,
      [](std::span<const double> x) { return x[0] + x[1] - 0.9 * x[0] * x[1]; });
  const auto report = validate_class(bad);
  EXPECT_TRUE(report.has(Violation::Kind::Monotonicity, 1));
  EXPECT_TRUE(report.has(Violation::Kind::Monotonicity, 2));
}

TEST(Validate, NonFiniteReported) {
  const auto bad = make_custom_bivariate("log", 2, BivariateClass::PhiTilde,
                                         [](std::span<const double> x) {
                                           return x[0] + x[1] + std::log(x[0]) - std::log(x[0]);
                                         });
  EXPECT_TRUE(validate_class(bad).has(Violation::Kind::NonFinite));
}

TEST(Validate, UnivariateCurvatureClass) {
  const int n = 2;
  // F(t) = φ(t^{-1/n}) is t^{-p/n}: convex for p > 0 or p ≤ -n, concave on [-n, 0).
  for (double p : {0.5, 1.0, 3.0, -3.0, -4.0}) {
    EXPECT_TRUE(validate_class(make_power(p).with_tag(UnivariateClass::Phi), n).ok()) << p;
  }
  for (double p : {-0.5, -1.0, -1.5}) {
    EXPECT_TRUE(validate_class(make_power(p).with_tag(UnivariateClass::Psi), n).ok()) << p;
    EXPECT_TRUE(validate_class(make_power(p).with_tag(UnivariateClass::Phi), n)
                    .has(Violation::Kind::Curvature))
        << p;
  }
  EXPECT_TRUE(validate_class(make_arctan_inverse_power(n).with_tag(UnivariateClass::Psi), n).ok());
  EXPECT_TRUE(validate_class(make_log1p_inverse_power(n).with_tag(UnivariateClass::Psi), n).ok());
  EXPECT_FALSE(validate_class(make_power(2.0).with_tag(UnivariateClass::Psi), n).ok());
}

TEST(Validate, AdditionClasses) {
  EXPECT_TRUE(validate_class(make_power(2.0), 2).ok());
  EXPECT_TRUE(validate_class(make_power(-2.0), 2).ok());
  const auto off = make_custom_univariate("2t", [](double t) { return 2 * t; },
                                          UnivariateClass::PhiTilde1);
  EXPECT_TRUE(validate_class(off, 2).has(Violation::Kind::Normalization));
}

TEST(FTransform, PowerSumConsistency) {
  // For φ = x^{-p} + y^{-p}, F_φ(x₁, x₂) = x₁^{p/n} + x₂^{p/n}.
  for (int n : {2, 3}) {
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
      const auto F = f_transform(make_power_sum(p, 2, PowerForm::Decreasing), n);
      for (double x1 : {0.01, 0.7, 30.0}) {
        for (double x2 : {0.2, 5.0}) {
          const double oracle = std::pow(x1, p / n) + std::pow(x2, p / n);
          EXPECT_NEAR(F(x1, x2), oracle, 1e-13 * oracle);
        }
      }
    }
  }
}

TEST(FTransform, ProbeSeesPowerCurvature) {
  const auto grid = log_grid(1e-2, 1e2, 20);
  for (int n : {2, 3}) {
    for (double p : {0.5, 1.0, -static_cast<double>(n) - 1.0}) {
      EXPECT_TRUE(probe_curvature(f_transform(make_power(p), n), grid).strictly_convex()) << p;
    }
    EXPECT_TRUE(probe_curvature(f_transform(make_power(-0.5 * n), n), grid).strictly_concave());
    const auto linear = probe_curvature(f_transform(make_power(-n), n), grid);
    EXPECT_TRUE(linear.convex && linear.concave);
    EXPECT_FALSE(linear.strictly_convex() || linear.strictly_concave());
  }
}

TEST(SolveTau, PowerSumOracle) {
  // τ^e + τ^e = 1 gives τ = 2^{-1/e}.
  for (double e : {0.5, 1.0, 2.0, 4.0}) {
    EXPECT_NEAR(solve_tau(make_power_sum(e, 2, PowerForm::Increasing)), std::pow(2.0, -1.0 / e),
                1e-15);
    EXPECT_NEAR(solve_tau(make_power_sum(e, 2, PowerForm::Decreasing)), std::pow(2.0, 1.0 / e),
                1e-14);
  }
  EXPECT_NEAR(solve_tau(make_power_sum(1.0, 3, PowerForm::Increasing)), 1.0 / 3.0, 1e-16);
}

TEST(SolveTau, RangeByClass) {
  const auto phi = make_weighted_sum(1.0, 1.0, make_power(1.0), make_power(3.0));
  const double tau = solve_tau(phi);
  EXPECT_GT(tau, 0.0);
  EXPECT_LT(tau, 1.0);
  EXPECT_NEAR(tau + tau * tau * tau, 1.0, 1e-15);
  EXPECT_GT(solve_tau(tilde(phi)), 1.0);
}

TEST(Derivative, AnalyticPower) {
  const auto d = one_sided_derivative_at_one(make_power(2.5), Side::Left);
  EXPECT_TRUE(d.analytic);
  EXPECT_EQ(d.value, 2.5);
}

TEST(Derivative, ArctanDescriptor) {
  // d/dt arctan(t^{-k}) at 1 is -k/2.
  const auto d = one_sided_derivative_at_one(make_arctan_inverse_power(3.0), Side::Right);
  EXPECT_NEAR(d.value, -1.5, 1e-15);
}

TEST(Derivative, NumericKink) {
  const auto kink = make_custom_univariate(
      "kink", [](double t) { return t < 1.0 ? 0.5 * t + 0.5 : 1.5 * t - 0.5; },
      UnivariateClass::PhiTilde1);
  const auto left = one_sided_derivative_at_one(kink, Side::Left);
  const auto right = one_sided_derivative_at_one(kink, Side::Right);
  EXPECT_FALSE(left.analytic);
  EXPECT_NEAR(left.value, 0.5, 1e-9);
  EXPECT_NEAR(right.value, 1.5, 1e-9);
}

TEST(Derivative, NumericSmoothMatchesCalculus) {
  const auto f = make_custom_univariate("t^3", [](double t) { return t * t * t; },
                                        UnivariateClass::PhiTilde1);
  const auto d = one_sided_derivative_at_one(f, Side::Left);
  EXPECT_NEAR(d.value, 3.0, 1e-7);
  EXPECT_GE(d.error, std::abs(d.value - 3.0));
}

TEST(Derivative, InfiniteSlopeThrows) {
  const auto f = make_custom_univariate(
      "cusp", [](double t) { return t >= 1.0 ? t : std::numeric_limits<double>::infinity(); },
      UnivariateClass::PhiTilde1);
  EXPECT_THROW(one_sided_derivative_at_one(f, Side::Left), EvaluationError);
}
