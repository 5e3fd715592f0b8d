#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace starorlicz {

// Relative midpoint gap below which a probe does not count as strictly
// convex (or concave).
inline constexpr double kStrictnessGap = 1e-8;

// Log-spaced samples lo * (hi/lo)^(k/(count-1)), k = 0..count-1.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

// Result of a sampled midpoint test. Gaps are relative:
//   gap(a, b) = ((F(a) + F(b))/2 - F((a+b)/2)) / (|F(a)| + |F(b)|)
// so a convex function has gap >= 0 on every pair and a concave one <= 0.
struct CurvatureProbe {
  bool finite = true;
  bool convex = true;
  bool concave = true;
  bool increasing = true;
  bool decreasing = true;
  bool constant = true;
  double min_gap = 0.0;  // smallest signed gap over all pairs
  double max_gap = 0.0;  // largest signed gap over all pairs
  std::size_t pairs = 0;
  std::string evidence;  // the pair that most contradicts convexity/concavity

  bool strictly_convex() const { return finite && convex && min_gap > kStrictnessGap; }
  bool strictly_concave() const { return finite && concave && -max_gap > kStrictnessGap; }
};

// Midpoint test over every pair of grid points. Monotonicity uses
// consecutive grid points and tolerates relative noise of 1e-12.
CurvatureProbe probe_curvature(const std::function<double(double)>& f,
                               std::span<const double> grid);

// Same test for a function of two variables over axis x axis, all point
// pairs. Monotonicity is not assessed (flags stay true).
CurvatureProbe probe_curvature_2d(const std::function<double(double, double)>& f,
                                  std::span<const double> axis);

}  // namespace starorlicz
