#include "starorlicz/probes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "starorlicz/errors.hpp"

namespace starorlicz {
namespace {

constexpr double kNoise = 1e-12;

struct PairTracker {
  CurvatureProbe& probe;
  double worst_convex = std::numeric_limits<double>::infinity();
  double worst_concave = -std::numeric_limits<double>::infinity();
  std::array<double, 4> convex_at{};
  std::array<double, 4> concave_at{};
  bool two_d = false;

  void add(double gap, const std::array<double, 4>& where) {
    ++probe.pairs;
    if (gap < worst_convex) {
      worst_convex = gap;
      convex_at = where;
    }
    if (gap > worst_concave) {
      worst_concave = gap;
      concave_at = where;
    }
  }

  std::string format(const std::array<double, 4>& p) const {
    std::ostringstream out;
    out.precision(6);
    if (two_d) {
      out << "((" << p[0] << ", " << p[1] << "), (" << p[2] << ", " << p[3] << "))";
    } else {
      out << "(" << p[0] << ", " << p[1] << ")";
    }
    return out.str();
  }

  void finish() {
    if (probe.pairs == 0) {
      probe.min_gap = probe.max_gap = 0.0;
      return;
    }
    probe.min_gap = worst_convex;
    probe.max_gap = worst_concave;
    probe.convex = probe.convex && worst_convex >= -kNoise;
    probe.concave = probe.concave && worst_concave <= kNoise;
    std::ostringstream out;
    out.precision(6);
    out << "min relative midpoint gap " << worst_convex << " at " << format(convex_at)
        << "; max relative midpoint gap " << worst_concave << " at " << format(concave_at);
    probe.evidence = out.str();
  }
};

double relative_gap(double fa, double fb, double fm) {
  const double scale = std::abs(fa) + std::abs(fb);
  const double gap = 0.5 * (fa + fb) - fm;
  if (scale == 0.0) return gap == 0.0 ? 0.0 : std::copysign(1.0, gap);
  return gap / scale;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw InvalidArgument("log_grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = lo * std::exp(step * static_cast<double>(k));
  }
  grid.back() = hi;
  return grid;
}

CurvatureProbe probe_curvature(const std::function<double(double)>& f,
                               std::span<const double> grid) {
  CurvatureProbe probe;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (!std::isfinite(values[i])) probe.finite = false;
  }
  if (!probe.finite) {
    probe.convex = probe.concave = probe.increasing = probe.decreasing = probe.constant = false;
    probe.evidence = "non-finite value on probe grid";
    return probe;
  }

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double scale = kNoise * std::max(std::abs(values[i]), std::abs(values[i + 1]));
    const double diff = values[i + 1] - values[i];
    if (diff < -scale) probe.increasing = false;
    if (diff > scale) probe.decreasing = false;
    if (std::abs(diff) > scale) probe.constant = false;
  }

  PairTracker tracker{probe};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double fm = f(mid);
      if (!std::isfinite(fm)) {
        probe.finite = false;
        probe.convex = probe.concave = false;
        continue;
      }
      tracker.add(relative_gap(values[i], values[j], fm), {grid[i], grid[j], 0.0, 0.0});
    }
  }
  tracker.finish();
  return probe;
}

CurvatureProbe probe_curvature_2d(const std::function<double(double, double)>& f,
                                  std::span<const double> axis) {
  CurvatureProbe probe;
  struct Sample {
    double x, y, v;
  };
  std::vector<Sample> samples;
  samples.reserve(axis.size() * axis.size());
  for (double x : axis) {
    for (double y : axis) {
      const double v = f(x, y);
      if (!std::isfinite(v)) {
        probe.finite = false;
        probe.convex = probe.concave = false;
        probe.evidence = "non-finite value on probe grid";
        return probe;
      }
      samples.push_back({x, y, v});
    }
  }
  PairTracker tracker{probe};
  tracker.two_d = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const auto& a = samples[i];
      const auto& b = samples[j];
      const double fm = f(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
      if (!std::isfinite(fm)) {
        probe.finite = false;
        probe.convex = probe.concave = false;
        continue;
      }
      tracker.add(relative_gap(a.v, b.v, fm), {a.x, a.y, b.x, b.y});
    }
  }
  tracker.finish();
  probe.constant = false;
  return probe;
}

}  // namespace starorlicz
