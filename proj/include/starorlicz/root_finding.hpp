#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "starorlicz/errors.hpp"

namespace starorlicz {

struct RootOptions {
  // Upper bound on the relative width of the final bracket. The iteration
  // normally runs until the bracket is a few ulps wide.
  double rel_tol = 1e-12;
  int max_iterations = 200;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

namespace detail {

[[noreturn]] void throw_no_straddle(double lo, double hi, double g_lo, double g_hi,
                                    std::vector<BracketStep> trace);
[[noreturn]] void throw_no_convergence(double lo, double hi, double g_lo, double g_hi,
                                       int iterations);

}  // namespace detail

// Brent's zero finder: bisection safeguarding secant and inverse quadratic
// interpolation steps. Requires g(lo) and g(hi) of opposite sign (or zero).
template <class G>
RootResult brent_root(G&& g, double lo, double hi, double g_lo, double g_hi,
                      const RootOptions& options = {}) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (g_lo == 0.0) return {lo, 0.0, 0};
  if (g_hi == 0.0) return {hi, 0.0, 0};
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    detail::throw_no_straddle(lo, hi, g_lo, g_hi, {{lo, hi, g_lo, g_hi}});
  }

  double a = lo, b = hi, fa = g_lo, fb = g_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    // 2 eps |b| keeps the iteration going down to the last few ulps; the
    // caller-visible contract is options.rel_tol.
    const double tol = 2.0 * eps * std::abs(b) + 0.5 * std::numeric_limits<double>::min();
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) {
      return {b, fb, iter};
    }
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = g(b);
    if (!std::isfinite(fb)) {
      detail::throw_no_convergence(std::min(b, c), std::max(b, c), fb, fc, iter);
    }
  }
  if (std::abs(c - b) <= options.rel_tol * std::abs(b)) {
    return {b, fb, options.max_iterations};
  }
  detail::throw_no_convergence(std::min(b, c), std::max(b, c), fb, fc, options.max_iterations);
}

// Finds a sign change of g starting from [lo, hi], growing hi geometrically
// (and shrinking lo toward zero when lo > 0) until g changes sign. Every step
// is recorded and returned in the SolverError on failure.
template <class G>
RootResult expand_and_solve(G&& g, double lo, double hi, int max_expansions = 200,
                            const RootOptions& options = {}) {
  std::vector<BracketStep> trace;
  double g_lo = g(lo);
  double g_hi = g(hi);
  trace.push_back({lo, hi, g_lo, g_hi});
  for (int k = 0; k < max_expansions; ++k) {
    if (std::isfinite(g_lo) && std::isfinite(g_hi) &&
        (g_lo == 0.0 || g_hi == 0.0 || (g_lo > 0.0) != (g_hi > 0.0))) {
      return brent_root(g, lo, hi, g_lo, g_hi, options);
    }
    if (lo > 0.0) {
      lo *= 0.5;
      g_lo = g(lo);
    }
    hi *= 2.0;
    g_hi = g(hi);
    trace.push_back({lo, hi, g_lo, g_hi});
  }
  detail::throw_no_straddle(lo, hi, g_lo, g_hi, std::move(trace));
}

}  // namespace starorlicz
