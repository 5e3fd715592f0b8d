#include "starorlicz/dual_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starorlicz/errors.hpp"
#include "starorlicz/radial_addition.hpp"

namespace starorlicz {
namespace {

void check_dimensions(const StarBody& K, const StarBody& L, const QuadratureRule& rule) {
  if (K.dimension() != L.dimension() || K.dimension() != rule.dimension) {
    throw InvalidArgument("dimension mismatch between bodies and quadrature rule");
  }
}

double checked(const OrliczUnivariate& phi, double t) {
  const double v = phi(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "phi '" << phi.name() << "' is " << v << " at ratio " << t;
    throw EvaluationError(msg.str());
  }
  return v;
}

Side variation_side(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2) {
  if (phi1.tag() == UnivariateClass::PhiTilde1 && phi2.tag() == UnivariateClass::PhiTilde1) {
    return Side::Left;
  }
  if (phi1.tag() == UnivariateClass::PsiTilde1 && phi2.tag() == UnivariateClass::PsiTilde1) {
    return Side::Right;
  }
  throw InvalidArgument("phi1 and phi2 must be both PhiTilde1 or both PsiTilde1");
}

}  // namespace

FunctionalValue dual_mixed_volume(const OrliczUnivariate& phi, const StarBody& K,
                                  const StarBody& L, const QuadratureRule& rule) {
  check_dimensions(K, L, rule);
  const int n = K.dimension();
  auto fv = integrate(BatchIntegrand([&](std::span<const Direction> dirs) {
                        auto rk = K.radii(dirs);
                        const auto rl = L.radii(dirs);
                        for (std::size_t i = 0; i < rk.size(); ++i) {
                          rk[i] = checked(phi, rk[i] / rl[i]) * std::pow(rk[i], n);
                        }
                        return rk;
                      }),
                      rule);
  fv.value /= n;
  fv.error_estimate /= n;
  return fv;
}

FunctionalValue dual_surface_area(const OrliczUnivariate& phi, const StarBody& K,
                                  const QuadratureRule& rule) {
  const int n = K.dimension();
  auto fv = dual_mixed_volume(phi, K, ball(n, 1.0), rule);
  fv.value *= n;
  fv.error_estimate *= n;
  return fv;
}

FunctionalValue harmonic_mean_radius(const OrliczUnivariate& phi, const StarBody& K,
                                     const QuadratureRule& rule) {
  const int n = K.dimension();
  if (n != rule.dimension) throw InvalidArgument("dimension mismatch between body and rule");
  const double omega = unit_ball_volume(n);
  auto fv = integrate(BatchIntegrand([&](std::span<const Direction> dirs) {
                        auto r = K.radii(dirs);
                        for (double& v : r) v = checked(phi, 1.0 / v);
                        return r;
                      }),
                      rule);
  fv.value /= n * omega;
  fv.error_estimate /= n * omega;

  const double via_mixed = dual_mixed_volume(phi, ball(n, 1.0), K, rule).value / omega;
  if (!(std::abs(via_mixed - fv.value) <= 1e-10 * std::abs(fv.value))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "harmonic mean radius forms disagree: " << fv.value << " vs " << via_mixed;
    throw EvaluationError(msg.str());
  }
  return fv;
}

double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) throw InvalidArgument("extrapolation needs matching data");
  std::vector<double> p = y;
  const std::size_t m = x.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double xi = x[i], xj = x[i + level];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
  }
  return p[0];
}

VariationEstimate first_variation(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                  const StarBody& K, const StarBody& L,
                                  const QuadratureRule& rule,
                                  const std::vector<double>& epsilons) {
  check_dimensions(K, L, rule);
  if (epsilons.size() < 2) throw InvalidArgument("at least two step sizes are required");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1]))) {
      throw InvalidArgument("step sizes must be positive and strictly decreasing");
    }
  }
  const Side side = variation_side(phi1, phi2);

  const int n = K.dimension();
  VariationEstimate est;
  est.epsilons = epsilons;
  est.rule = rule.descriptor;
  est.derivative = one_sided_derivative_at_one(phi1, side);
  est.volume_K = volume(K, rule).value;
  for (double eps : epsilons) {
    const double v = volume(epsilon_sum(phi1, phi2, K, L, eps), rule).value;
    est.volumes.push_back(v);
    est.quotients.push_back((est.volume_K - v) / (n * eps));
  }
  est.extrapolated_limit = extrapolate_to_zero(est.epsilons, est.quotients);
  // Compare against the extrapolation that drops the largest step.
  const std::vector<double> tail_x(est.epsilons.begin() + 1, est.epsilons.end());
  const std::vector<double> tail_y(est.quotients.begin() + 1, est.quotients.end());
  const double lower = tail_x.size() >= 2 ? extrapolate_to_zero(tail_x, tail_y) : tail_y.front();
  est.extrapolation_error = std::abs(est.extrapolated_limit - lower);
  est.target = dual_mixed_volume(phi2, K, L, rule);
  return est;
}

std::vector<double> scaled_epsilons(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                    const StarBody& K, const StarBody& L,
                                    const QuadratureRule& rule) {
  check_dimensions(K, L, rule);
  const Side side = variation_side(phi1, phi2);
  const double slope = std::abs(one_sided_derivative_at_one(phi1, side).value);
  const auto rk = K.radii(rule.nodes);
  const auto rl = L.radii(rule.nodes);
  double kappa = 0.0;
  for (std::size_t i = 0; i < rk.size(); ++i) kappa = std::max(kappa, std::abs(checked(phi2, rk[i] / rl[i])));
  kappa /= slope;
  std::vector<double> eps = default_epsilons();
  if (std::isfinite(kappa) && kappa > 1.0) {
    for (double& e : eps) e /= kappa;
  }
  return eps;
}

VariationEstimate first_variation(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                  const StarBody& K, const StarBody& L,
                                  const QuadratureRule& rule) {
  return first_variation(phi1, phi2, K, L, rule, scaled_epsilons(phi1, phi2, K, L, rule));
}

}  // namespace starorlicz
