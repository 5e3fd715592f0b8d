#include "starorlicz/radial_addition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starorlicz/errors.hpp"
#include "starorlicz/root_finding.hpp"

namespace starorlicz {
namespace {

constexpr double kWiden = 1e-12;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void check_radii(std::span<const double> radii) {
  for (double a : radii) {
    if (!std::isfinite(a) || !(a > 0.0)) {
      throw EvaluationError("radius " + fmt(a) + " passed to the radial solver is not finite and positive");
    }
  }
}

// Solves g(c) = 0 on [lo, hi] where g is monotone. If rounding leaves both
// endpoints on one side, the bracket is widened once by 1e-12 relative.
template <class G>
double bracketed_solve(G&& g, double lo, double hi) {
  if (lo == hi) return lo;
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  std::vector<BracketStep> trace{{lo, hi, g_lo, g_hi}};
  if ((g_lo > 0.0) == (g_hi > 0.0) || !std::isfinite(g_lo) || !std::isfinite(g_hi)) {
    lo *= 1.0 - kWiden;
    hi *= 1.0 + kWiden;
    g_lo = g(lo);
    g_hi = g(hi);
    trace.push_back({lo, hi, g_lo, g_hi});
    if ((g_lo > 0.0) == (g_hi > 0.0) || !std::isfinite(g_lo) || !std::isfinite(g_hi)) {
      throw SolverError("radial equation is not bracketed by [tau*min, tau*max]: g(" + fmt(lo) +
                            ") = " + fmt(g_lo) + ", g(" + fmt(hi) + ") = " + fmt(g_hi) +
                            "; the Orlicz function fails its class conditions",
                        std::move(trace));
    }
  }
  return brent_root(g, lo, hi, g_lo, g_hi).root;
}

double linear_tau(double alpha, double beta, const OrliczUnivariate& phi1,
                  const OrliczUnivariate& phi2) {
  auto g = [&](double t) { return alpha * phi1(t) + beta * phi2(t) - 1.0; };
  const bool increasing = phi1.tag() == UnivariateClass::PhiTilde1;
  const RootResult r = increasing ? expand_and_solve(g, 0.0, 1.0) : expand_and_solve(g, 1.0, 2.0);
  if (!(r.root > 0.0) || !std::isfinite(r.root)) {
    throw SolverError("diagonal root of the linear Orlicz equation is " + fmt(r.root),
                      {{r.root, r.root, r.residual, r.residual}});
  }
  return r.root;
}

}  // namespace

RadialSolveProblem RadialSolveProblem::make(OrliczBivariate phi, std::vector<double> radii) {
  if (static_cast<int>(radii.size()) != phi.arity()) {
    throw InvalidArgument("expected " + std::to_string(phi.arity()) + " radii, got " +
                          std::to_string(radii.size()));
  }
  for (double r : radii) {
    if (!(std::isfinite(r) && r > 0.0)) throw InvalidArgument("radii must be finite and positive");
  }
  const double tau = solve_tau(phi);
  return RadialSolveProblem{std::move(phi), std::move(radii), tau};
}

double solve_radial(const RadialSolveProblem& problem) {
  return solve_radial(problem.phi, problem.tau, problem.radii);
}

double solve_radial(const OrliczBivariate& phi, double tau, std::span<const double> radii) {
  check_radii(radii);
  const auto [mn, mx] = std::minmax_element(radii.begin(), radii.end());
  if (*mn == *mx) return tau * *mn;
  std::vector<double> x(radii.size());
  auto g = [&](double c) {
    for (std::size_t i = 0; i < radii.size(); ++i) x[i] = c / radii[i];
    return phi(x) - 1.0;
  };
  return bracketed_solve(g, tau * *mn, tau * *mx);
}

StarBody orlicz_radial_sum(const OrliczBivariate& phi, std::vector<StarBody> bodies) {
  if (static_cast<int>(bodies.size()) != phi.arity()) {
    throw InvalidArgument("Orlicz function of arity " + std::to_string(phi.arity()) +
                          " cannot add " + std::to_string(bodies.size()) + " bodies");
  }
  const int n = bodies.front().dimension();
  for (const auto& b : bodies) {
    if (b.dimension() != n) throw InvalidArgument("dimension mismatch in Orlicz radial sum");
  }
  const ValidationReport report = validate_class(phi);
  if (!report.ok()) {
    throw InvalidArgument("Orlicz function '" + phi.name() + "' is not in its declared class " +
                          to_string(phi.tag()) + ": " + report.summary());
  }
  const double tau = solve_tau(phi);
  return StarBody::make(n, node::OrliczSum{phi, tau, std::move(bodies)});
}

StarBody orlicz_radial_sum(const OrliczBivariate& phi, const StarBody& K, const StarBody& L) {
  return orlicz_radial_sum(phi, std::vector<StarBody>{K, L});
}

StarBody p_radial_sum_closed_form(double p, const StarBody& K, const StarBody& L) {
  if (p == 0.0 || !std::isfinite(p)) throw InvalidArgument("p must be finite and nonzero");
  if (K.dimension() != L.dimension()) throw InvalidArgument("dimension mismatch");
  const int n = K.dimension();
  return StarBody::make(
      n, node::CustomRadial{"p_radial_sum", [p, K, L](std::span<const double> u) {
                              const auto dir = Direction::unit(std::vector<double>(u.begin(), u.end()));
                              const double a = K.radius(dir);
                              const double b = L.radius(dir);
                              return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
                            }});
}

LinearOrliczSpec LinearOrliczSpec::make(double alpha, double beta, OrliczUnivariate phi1,
                                        OrliczUnivariate phi2) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidArgument("alpha and beta must be finite and positive");
  }
  const bool both_phi = phi1.tag() == UnivariateClass::PhiTilde1 &&
                        phi2.tag() == UnivariateClass::PhiTilde1;
  const bool both_psi = phi1.tag() == UnivariateClass::PsiTilde1 &&
                        phi2.tag() == UnivariateClass::PsiTilde1;
  if (!both_phi && !both_psi) {
    throw InvalidArgument(std::string("phi1 and phi2 must be both PhiTilde1 or both PsiTilde1, got ") +
                          to_string(phi1.tag()) + " and " + to_string(phi2.tag()));
  }
  for (const auto* phi : {&phi1, &phi2}) {
    const ValidationReport report = validate_class(*phi, 2);
    if (!report.ok()) {
      throw InvalidArgument("'" + phi->name() + "' is not in its declared class " +
                            to_string(phi->tag()) + ": " + report.summary());
    }
  }
  return LinearOrliczSpec{alpha, beta, std::move(phi1), std::move(phi2)};
}

double LinearOrliczSpec::tau() const { return linear_tau(alpha, beta, phi1, phi2); }

double LinearOrliczSpec::dilate_root(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidArgument("dilation factor must be positive");
  return solve_linear_radial(*this, tau(), 1.0, lambda);
}

double solve_linear_radial(const LinearOrliczSpec& spec, double tau, double a, double b) {
  return solve_linear_radial(spec.alpha, spec.beta, spec.phi1, spec.phi2, tau, a, b);
}

double solve_linear_radial(double alpha, double beta, const OrliczUnivariate& phi1,
                           const OrliczUnivariate& phi2, double tau, double a, double b) {
  const double ab[2] = {a, b};
  check_radii(ab);
  if (a == b) return tau * a;
  auto g = [&](double c) { return alpha * phi1(c / a) + beta * phi2(c / b) - 1.0; };
  return bracketed_solve(g, tau * std::min(a, b), tau * std::max(a, b));
}

StarBody linear_orlicz_sum(const LinearOrliczSpec& spec, const StarBody& K, const StarBody& L) {
  if (K.dimension() != L.dimension()) throw InvalidArgument("dimension mismatch in linear Orlicz sum");
  return StarBody::make(K.dimension(), node::LinearOrliczSum{spec.alpha, spec.beta, spec.phi1,
                                                             spec.phi2, spec.tau(), K, L});
}

StarBody epsilon_sum(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                     const StarBody& K, const StarBody& L, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive");
  return linear_orlicz_sum(LinearOrliczSpec::make(1.0, eps, phi1, phi2), K, L);
}

}  // namespace starorlicz
