#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "starorlicz/errors.hpp"
#include "starorlicz/star_body.hpp"

using namespace starorlicz;

namespace {

Direction dir(std::vector<double> v) { return Direction::normalized(std::move(v)); }

}  // namespace

TEST(Direction, Normalizes) {
  const auto u = dir({3.0, 4.0});
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.8);
  EXPECT_THROW(Direction::normalized({0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(Direction::unit({1.0, 1.0}), InvalidArgument);
  EXPECT_NO_THROW(Direction::unit({0.6, 0.8}));
  EXPECT_DOUBLE_EQ(u.negated()[1], -0.8);
}

TEST(Primitives, BallAndEllipsoid) {
  EXPECT_DOUBLE_EQ(ball(3, 2.5).radius(dir({1, 2, 3})), 2.5);
  const auto E = ellipsoid_axes({2.0, 0.5});
  for (double theta : {0.0, 0.3, 1.2, 2.9}) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double oracle = 1.0 / std::sqrt(c * c / 4.0 + s * s / 0.25);
    EXPECT_NEAR(E.radius(dir({c, s})), oracle, 1e-15 * oracle);
  }
  EXPECT_THROW(ball(2, 0.0), InvalidArgument);
  EXPECT_THROW(ball(1, 1.0), InvalidArgument);
  EXPECT_THROW(ellipsoid_axes({1.0, -1.0}), InvalidArgument);
}

TEST(Primitives, LpBall) {
  // The l_1 ball is the diamond: ρ(u) = 1/(|u_1| + |u_2|).
  const auto D = lp_ball(2, 1.0);
  const auto u = dir({1.0, 2.0});
  EXPECT_NEAR(D.radius(u), 1.0 / (std::abs(u[0]) + std::abs(u[1])), 1e-15);
  // Non-convex q < 1 is still a star body.
  const auto S = lp_ball(2, 0.5, 2.0);
  const double oracle = 2.0 * std::pow(std::sqrt(std::abs(u[0])) + std::sqrt(std::abs(u[1])), -2.0);
  EXPECT_NEAR(S.radius(u), oracle, 1e-14);
}

TEST(Transforms, LinearImageOfBall) {
  // ρ_{TB}(u) = 1/|T^{-1}u|.
  const auto T = LinearMap::from_rows({{2.0, 1.0}, {0.0, 0.5}});
  const auto TB = apply_linear(T, ball(2));
  for (double theta : {0.1, 1.0, 2.0, 4.0}) {
    const double x = std::cos(theta), y = std::sin(theta);
    // T^{-1} = [[0.5, -1], [0, 2]]
    const double a = 0.5 * x - y, b = 2.0 * y;
    EXPECT_NEAR(TB.radius(dir({x, y})), 1.0 / std::hypot(a, b), 1e-14);
  }
  EXPECT_THROW(LinearMap::from_rows({{1.0, 2.0}, {2.0, 4.0}}), InvalidArgument);
}

TEST(Transforms, LinearImageOfEllipsoidIsEllipsoid) {
  Eigen::MatrixXd A(3, 3);
  A << 2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 0.5;
  Eigen::MatrixXd M(3, 3);
  M << 1.0, 0.2, 0.0, 0.0, 1.5, 0.3, 0.4, 0.0, 0.8;
  const LinearMap T(M);
  const Eigen::MatrixXd Ti = M.inverse();
  const auto lhs = apply_linear(T, ellipsoid_matrix(A));
  const auto rhs = ellipsoid_matrix(Ti.transpose() * A * Ti);
  for (const auto& u : random_directions(3, 50, 7)) {
    EXPECT_NEAR(lhs.radius(u), rhs.radius(u), 1e-13);
  }
}

TEST(Transforms, DilateIntersectUnion) {
  const auto E = ellipsoid_axes({2.0, 0.5});
  const auto B = ball(2, 1.0);
  for (const auto& u : direction_grid(2, 64)) {
    EXPECT_DOUBLE_EQ(dilate(3.0, E).radius(u), 3.0 * E.radius(u));
    EXPECT_DOUBLE_EQ(intersect({E, B}).radius(u), std::min(E.radius(u), 1.0));
    EXPECT_DOUBLE_EQ(unite({E, B}).radius(u), std::max(E.radius(u), 1.0));
  }
  EXPECT_THROW(dilate(-1.0, B), InvalidArgument);
  EXPECT_THROW(intersect({B, ball(3)}), InvalidArgument);
}

TEST(Custom, GuardRejectsDegenerate) {
  EXPECT_THROW(custom_radial(2, "zero", [](std::span<const double>) { return 0.0; }),
               InvalidArgument);
  EXPECT_THROW(custom_radial(2, "nan", [](std::span<const double> u) { return std::sqrt(u[0]); }),
               InvalidArgument);
  const auto C = custom_radial(2, "bump", [](std::span<const double> u) { return 1.0 + 0.5 * u[0] * u[0]; });
  EXPECT_DOUBLE_EQ(C.radius(dir({1.0, 0.0})), 1.5);
}

TEST(Batch, MatchesPointwiseAndSharesSubtrees) {
  const auto E = apply_linear(LinearMap::from_rows({{1.0, 0.4}, {0.0, 1.2}}), lp_ball(2, 3.0));
  const auto K = unite({intersect({E, ball(2, 1.1)}), dilate(0.7, E)});
  const auto grid = direction_grid(2, 100);
  const auto batch = K.radii(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(batch[i], K.radius(grid[i]));
}

TEST(Grid, UnitDirections) {
  for (int n : {2, 3, 5}) {
    const auto g = direction_grid(n, 200);
    ASSERT_EQ(g.size(), 200u);
    for (const auto& u : g) {
      double s = 0.0;
      for (double c : u.components()) s += c * c;
      EXPECT_NEAR(s, 1.0, 1e-14);
    }
  }
}

TEST(RadialDistance, ConcentricBalls) {
  const auto grid = direction_grid(3, 300);
  const auto d = radial_distance(ball(3, 1.0), ball(3, 2.5), grid);
  EXPECT_DOUBLE_EQ(d.value, 1.5);
  EXPECT_EQ(d.grid_size, 300u);
}

TEST(Continuity, RadiiConvergeAlongSequence) {
  const auto K = unite({ellipsoid_axes({1.5, 0.7, 1.0}), lp_ball(3, 4.0)});
  const auto u = dir({0.3, -0.5, 0.8});
  double previous = std::numeric_limits<double>::infinity();
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto v = dir({0.3 + h, -0.5, 0.8 - h});
    const double gap = std::abs(K.radius(v) - K.radius(u));
    EXPECT_LE(gap, previous + 1e-15);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-4);
}
