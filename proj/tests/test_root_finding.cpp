#include <gtest/gtest.h>

#include <cmath>

#include "starorlicz/root_finding.hpp"

using namespace starorlicz;

TEST(BrentRoot, CubeRootOfTwo) {
  auto g = [](double x) { return x * x * x - 2.0; };
  const auto r = brent_root(g, 0.0, 2.0, g(0.0), g(2.0));
  EXPECT_NEAR(r.root, std::cbrt(2.0), 4e-16);
  EXPECT_LE(std::abs(r.residual), 1e-15);
  EXPECT_LE(r.iterations, 200);
}

TEST(BrentRoot, DecreasingFunction) {
  auto g = [](double x) { return 1.0 / x - 3.0; };
  const auto r = brent_root(g, 0.1, 10.0, g(0.1), g(10.0));
  EXPECT_NEAR(r.root, 1.0 / 3.0, 1e-16);
}

TEST(BrentRoot, EndpointRoot) {
  auto g = [](double x) { return x - 1.0; };
  EXPECT_EQ(brent_root(g, 1.0, 2.0, 0.0, 1.0).root, 1.0);
}

TEST(BrentRoot, NoSignChangeThrowsWithTrace) {
  auto g = [](double x) { return x * x + 1.0; };
  try {
    brent_root(g, -1.0, 1.0, g(-1.0), g(1.0));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    ASSERT_EQ(e.trace().size(), 1u);
    EXPECT_EQ(e.trace()[0].lo, -1.0);
    EXPECT_EQ(e.trace()[0].g_hi, 2.0);
  }
}

TEST(ExpandAndSolve, GrowsBracket) {
  auto g = [](double x) { return std::exp(x) - 1000.0; };
  const auto r = expand_and_solve(g, 0.0, 1.0);
  EXPECT_NEAR(r.root, std::log(1000.0), 1e-14);
}

TEST(ExpandAndSolve, ShrinksLowerEnd) {
  auto g = [](double x) { return std::log(x) + 20.0; };
  const auto r = expand_and_solve(g, 0.5, 1.0);
  EXPECT_NEAR(r.root, std::exp(-20.0), 1e-22);
}

TEST(ExpandAndSolve, FailureRecordsEveryStep) {
  auto g = [](double) { return 1.0; };
  try {
    expand_and_solve(g, 0.5, 1.0, 10);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.trace().size(), 11u);
    EXPECT_EQ(e.trace().back().hi, 1024.0);
  }
}
