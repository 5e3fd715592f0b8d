#include "starorlicz/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starorlicz/dual_functionals.hpp"
#include "starorlicz/errors.hpp"
#include "starorlicz/root_finding.hpp"

namespace starorlicz {
namespace {

// Largest change of f when each input moves by ± its error estimate.
template <class F>
double propagate(F&& f, const std::vector<double>& x, const std::vector<double>& err) {
  const double base = f(x);
  double worst = 0.0;
  const std::size_t k = x.size();
  std::vector<double> y(k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) y[i] = x[i] + (((mask >> i) & 1) ? err[i] : -err[i]);
    const double v = f(y);
    if (std::isfinite(v)) worst = std::max(worst, std::abs(v - base));
  }
  return worst;
}

VerificationReport finish(TheoremId id, double lhs, double rhs, double lhs_error,
                          double rhs_error, Relation direction, double error_factor,
                          const VerifyOptions& options, const RuleDescriptor& rule) {
  VerificationReport r;
  r.theorem = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_error = lhs_error;
  r.rhs_error = rhs_error;
  r.direction = direction;
  r.margin = margin_of(lhs, rhs, direction);
  r.tolerance =
      std::max(options.relative_floor * std::abs(rhs), error_factor * (lhs_error + rhs_error));
  r.verdict = verdict_of(r.margin, r.tolerance);
  r.rule = rule;
  return r;
}

void require_curvature(const CurvatureProbe& probe, Curvature declared, const std::string& what) {
  const bool ok = probe.finite && (declared == Curvature::Convex ? probe.convex : probe.concave);
  if (!ok) {
    throw DeclarationError(what + " declared " + to_string(declared) +
                           " but the sampling probe disagrees: " +
                           (probe.finite ? probe.evidence : std::string("non-finite values")));
  }
}

bool strict_for(const CurvatureProbe& probe, Curvature c) {
  return c == Curvature::Convex ? probe.strictly_convex() : probe.strictly_concave();
}

// Φ maps to convex, Ψ to concave; other tags are refused.
Curvature univariate_curvature(const OrliczUnivariate& phi, int n, CurvatureProbe& probe) {
  if (phi.tag() != UnivariateClass::Phi && phi.tag() != UnivariateClass::Psi) {
    throw DeclarationError("'" + phi.name() + "' must be declared Phi or Psi, got " +
                           to_string(phi.tag()));
  }
  const Curvature c = phi.tag() == UnivariateClass::Phi ? Curvature::Convex : Curvature::Concave;
  probe = probe_f(phi, n);
  const bool ok = probe.finite && (probe.constant ||
                                   (c == Curvature::Convex ? probe.convex
                                                           : probe.concave && probe.increasing));
  if (!ok) {
    throw DeclarationError("'" + phi.name() + "' declared " + to_string(phi.tag()) +
                           " but F(t) = phi(t^{-1/n}) fails the probe: " +
                           (probe.finite ? probe.evidence : std::string("non-finite values")));
  }
  return c;
}

std::vector<Direction> diagnosis_grid(int n, const VerifyOptions& options) {
  return direction_grid(n, options.dilate_grid, options.seed);
}

}  // namespace

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::DualOBM:
      return "DualOBM";
    case TheoremId::LinearDualOBM:
      return "LinearDualOBM";
    case TheoremId::DualMinkowski:
      return "DualMinkowski";
    case TheoremId::Isoperimetric:
      return "Isoperimetric";
    case TheoremId::Urysohn:
      return "Urysohn";
    case TheoremId::Comparison:
      return "Comparison";
    case TheoremId::SLInvariance:
      return "SLInvariance";
  }
  return "unknown";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual:
      return "<=";
    case Relation::GreaterEqual:
      return ">=";
    case Relation::Equal:
      return "=";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Violated:
      return "violated";
    case Verdict::EqualityWithinTol:
      return "equality_within_tol";
  }
  return "?";
}

const char* to_string(Curvature c) { return c == Curvature::Convex ? "convex" : "concave"; }

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids{
      TheoremId::DualOBM,       TheoremId::LinearDualOBM, TheoremId::DualMinkowski,
      TheoremId::Isoperimetric, TheoremId::Urysohn,       TheoremId::Comparison,
      TheoremId::SLInvariance};
  return ids;
}

TheoremId theorem_from_string(const std::string& s) {
  for (TheoremId id : all_theorems()) {
    if (s == to_string(id)) return id;
  }
  throw InvalidArgument("unknown theorem '" + s + "'");
}

Curvature curvature_from_string(const std::string& s) {
  if (s == "convex") return Curvature::Convex;
  if (s == "concave") return Curvature::Concave;
  throw InvalidArgument("curvature must be 'convex' or 'concave', got '" + s + "'");
}

double margin_of(double lhs, double rhs, Relation direction) {
  switch (direction) {
    case Relation::LessEqual:
      return rhs - lhs;
    case Relation::GreaterEqual:
      return lhs - rhs;
    case Relation::Equal:
      return -std::abs(lhs - rhs);
  }
  return 0.0;
}

Verdict verdict_of(double margin, double tolerance) {
  if (std::abs(margin) <= tolerance) return Verdict::EqualityWithinTol;
  return margin > 0.0 ? Verdict::Holds : Verdict::Violated;
}

DilateDiagnosis diagnose_dilates(const StarBody& K, const StarBody& L,
                                 std::span<const Direction> grid, double tol) {
  if (grid.empty()) throw InvalidArgument("dilate detection needs a nonempty grid");
  const auto rk = K.radii(grid);
  const auto rl = L.radii(grid);
  double sum = 0.0;
  std::vector<double> ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ratio[i] = rl[i] / rk[i];
    sum += ratio[i];
  }
  const double mean = sum / static_cast<double>(grid.size());
  double dev = 0.0;
  for (double r : ratio) dev = std::max(dev, std::abs(r - mean));
  DilateDiagnosis d;
  d.lambda = mean;
  d.max_relative_deviation = dev / mean;
  d.grid_size = grid.size();
  d.dilates = dev <= tol * mean;
  return d;
}

std::optional<double> dilate_detector(const StarBody& K, const StarBody& L,
                                      std::span<const Direction> grid, double tol) {
  const auto d = diagnose_dilates(K, L, grid, tol);
  if (d.dilates) return d.lambda;
  return std::nullopt;
}

CurvatureProbe probe_f_phi(const OrliczBivariate& phi, int n) {
  if (phi.arity() != 2) throw InvalidArgument("F_phi probe needs a function of two variables");
  const auto f = f_transform(phi, n);
  const auto axis = log_grid(1e-2, 1e2, 10);
  return probe_curvature_2d([&f](double x, double y) { return f(x, y); }, axis);
}

CurvatureProbe probe_f(const OrliczUnivariate& phi, int n) {
  const auto axis = default_probe_axis();
  return probe_curvature(f_transform(phi, n), axis);
}

VerificationReport verify_dual_obm(const OrliczBivariate& phi, const StarBody& K,
                                   const StarBody& L, const QuadratureRule& rule,
                                   Curvature declared, const VerifyOptions& options) {
  const int n = K.dimension();
  const CurvatureProbe probe = probe_f_phi(phi, n);
  require_curvature(probe, declared, "F_phi for '" + phi.name() + "'");

  const StarBody sum = orlicz_radial_sum(phi, K, L);
  const auto vs = volume(sum, rule);
  const auto vk = volume(K, rule);
  const auto vl = volume(L, rule);
  auto expr = [&phi, n](const std::vector<double>& v) {
    return phi(std::pow(v[0] / v[1], 1.0 / n), std::pow(v[0] / v[2], 1.0 / n));
  };
  const std::vector<double> x{vs.value, vk.value, vl.value};
  const double lhs = expr(x);
  const double err = propagate(expr, x, {vs.error_estimate, vk.error_estimate, vl.error_estimate});
  auto r = finish(TheoremId::DualOBM, lhs, 1.0, err, 0.0,
                  declared == Curvature::Convex ? Relation::LessEqual : Relation::GreaterEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(probe, declared);
  r.probe_evidence = probe.evidence;
  r.equality_diagnosis =
      diagnose_dilates(K, L, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_linear_dual_obm(const LinearOrliczSpec& spec, const StarBody& K,
                                          const StarBody& L, const QuadratureRule& rule,
                                          Curvature declared, const VerifyOptions& options) {
  const int n = K.dimension();
  const CurvatureProbe p1 = probe_f(spec.phi1, n);
  const CurvatureProbe p2 = probe_f(spec.phi2, n);
  require_curvature(p1, declared, "F_1 for '" + spec.phi1.name() + "'");
  require_curvature(p2, declared, "F_2 for '" + spec.phi2.name() + "'");

  const StarBody sum = linear_orlicz_sum(spec, K, L);
  const auto vs = volume(sum, rule);
  const auto vk = volume(K, rule);
  const auto vl = volume(L, rule);
  auto expr = [&spec, n](const std::vector<double>& v) {
    return spec.alpha * spec.phi1(std::pow(v[0] / v[1], 1.0 / n)) +
           spec.beta * spec.phi2(std::pow(v[0] / v[2], 1.0 / n));
  };
  const std::vector<double> x{vs.value, vk.value, vl.value};
  const double lhs = expr(x);
  const double err = propagate(expr, x, {vs.error_estimate, vk.error_estimate, vl.error_estimate});
  auto r = finish(TheoremId::LinearDualOBM, lhs, 1.0, err, 0.0,
                  declared == Curvature::Convex ? Relation::LessEqual : Relation::GreaterEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(p1, declared) || strict_for(p2, declared);
  r.probe_evidence = p1.evidence + " | " + p2.evidence;
  r.equality_diagnosis =
      diagnose_dilates(K, L, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_dual_minkowski(const OrliczUnivariate& phi, const StarBody& K,
                                         const StarBody& L, const QuadratureRule& rule,
                                         const VerifyOptions& options) {
  const int n = K.dimension();
  CurvatureProbe probe;
  const Curvature c = univariate_curvature(phi, n, probe);

  const auto lhs = dual_mixed_volume(phi, K, L, rule);
  const auto vk = volume(K, rule);
  const auto vl = volume(L, rule);
  auto rhs_expr = [&phi, n](const std::vector<double>& v) {
    return v[0] * phi(std::pow(v[0] / v[1], 1.0 / n));
  };
  const std::vector<double> x{vk.value, vl.value};
  const double rhs = rhs_expr(x);
  const double rhs_err = propagate(rhs_expr, x, {vk.error_estimate, vl.error_estimate});
  auto r = finish(TheoremId::DualMinkowski, lhs.value, rhs, lhs.error_estimate, rhs_err,
                  c == Curvature::Convex ? Relation::GreaterEqual : Relation::LessEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(probe, c);
  r.probe_evidence = probe.evidence;
  r.equality_diagnosis =
      diagnose_dilates(K, L, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_isoperimetric(const OrliczUnivariate& phi, const StarBody& K,
                                        const QuadratureRule& rule,
                                        const VerifyOptions& options) {
  const int n = K.dimension();
  CurvatureProbe probe;
  const Curvature c = univariate_curvature(phi, n, probe);

  const auto lhs = dual_surface_area(phi, K, rule);
  const auto vk = volume(K, rule);
  const double omega = unit_ball_volume(n);
  // S̃_φ(B_K) = φ(r)·n·|K| with r = (|K|/ω_n)^{1/n}
  auto rhs_expr = [&phi, n, omega](const std::vector<double>& v) {
    return phi(std::pow(v[0] / omega, 1.0 / n)) * n * v[0];
  };
  const std::vector<double> x{vk.value};
  const double rhs = rhs_expr(x);
  const double rhs_err = propagate(rhs_expr, x, {vk.error_estimate});
  auto r = finish(TheoremId::Isoperimetric, lhs.value, rhs, lhs.error_estimate, rhs_err,
                  c == Curvature::Convex ? Relation::GreaterEqual : Relation::LessEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(probe, c);
  r.probe_evidence = probe.evidence;
  r.equality_diagnosis =
      diagnose_dilates(ball(n, 1.0), K, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_urysohn(const OrliczUnivariate& phi, const StarBody& K,
                                  const QuadratureRule& rule, const VerifyOptions& options) {
  const int n = K.dimension();
  CurvatureProbe probe;
  const Curvature c = univariate_curvature(phi, n, probe);

  const auto lhs = harmonic_mean_radius(phi, K, rule);
  const auto vk = volume(K, rule);
  const double omega = unit_ball_volume(n);
  // ω̃_φ(B_K) = φ(ω_n^{1/n}·|K|^{-1/n})
  auto rhs_expr = [&phi, n, omega](const std::vector<double>& v) {
    return phi(std::pow(omega / v[0], 1.0 / n));
  };
  const std::vector<double> x{vk.value};
  const double rhs = rhs_expr(x);
  const double rhs_err = propagate(rhs_expr, x, {vk.error_estimate});
  auto r = finish(TheoremId::Urysohn, lhs.value, rhs, lhs.error_estimate, rhs_err,
                  c == Curvature::Convex ? Relation::GreaterEqual : Relation::LessEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(probe, c);
  r.probe_evidence = probe.evidence;
  r.equality_diagnosis =
      diagnose_dilates(ball(n, 1.0), K, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_comparison(const OrliczUnivariate& phi, const OrliczUnivariate& psi,
                                     const StarBody& K, const StarBody& L,
                                     const QuadratureRule& rule, Curvature declared,
                                     const VerifyOptions& options) {
  const int n = K.dimension();
  if (L.dimension() != n || rule.dimension != n) throw InvalidArgument("dimension mismatch");

  // Ratio range seen by the quadrature.
  const auto rk = K.radii(rule.nodes);
  const auto rl = L.radii(rule.nodes);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (std::size_t i = 0; i < rk.size(); ++i) {
    rmin = std::min(rmin, rk[i] / rl[i]);
    rmax = std::max(rmax, rk[i] / rl[i]);
  }
  const double lo = 0.5 * rmin, hi = 2.0 * rmax;
  const auto t_grid = log_grid(lo, hi, 64);
  std::vector<double> s_grid;
  for (double t : t_grid) s_grid.push_back(psi(t));
  const bool increasing = s_grid.back() > s_grid.front();
  for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
    const double d = s_grid[i + 1] - s_grid[i];
    const double scale = 1e-14 * std::max(std::abs(s_grid[i]), std::abs(s_grid[i + 1]));
    if (!std::isfinite(d) || (increasing ? !(d > scale) : !(-d > scale))) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "psi '" << psi.name() << "' is not invertible on the ratio range [" << lo << ", "
          << hi << "]: not strictly monotone between " << t_grid[i] << " and " << t_grid[i + 1];
      throw InvalidArgument(msg.str());
    }
  }
  if (!increasing) std::reverse(s_grid.begin(), s_grid.end());

  const double psi_lo = psi(lo), psi_hi = psi(hi);
  auto psi_inverse = [&](double s) {
    auto g = [&](double t) { return psi(t) - s; };
    return brent_root(g, lo, hi, psi_lo - s, psi_hi - s).root;
  };
  auto H = [&](double s) { return phi(psi_inverse(s)); };

  const CurvatureProbe probe = probe_curvature(H, s_grid);
  require_curvature(probe, declared, "H = phi o psi^{-1}");

  const auto vphi = dual_mixed_volume(phi, K, L, rule);
  const auto vpsi = dual_mixed_volume(psi, K, L, rule);
  const auto vk = volume(K, rule);
  auto lhs_expr = [](const std::vector<double>& v) { return v[0] / v[1]; };
  auto rhs_expr = [&H](const std::vector<double>& v) { return H(v[0] / v[1]); };
  const double lhs = vphi.value / vk.value;
  const double lhs_err =
      propagate(lhs_expr, {vphi.value, vk.value}, {vphi.error_estimate, vk.error_estimate});
  const double rhs = H(vpsi.value / vk.value);
  // Perturbed arguments may leave ψ's range; those samples are skipped.
  double rhs_err = 0.0;
  try {
    rhs_err = propagate(rhs_expr, {vpsi.value, vk.value}, {vpsi.error_estimate, vk.error_estimate});
  } catch (const SolverError&) {
    rhs_err = std::abs(rhs) * 1e-12;
  }
  auto r = finish(TheoremId::Comparison, lhs, rhs, lhs_err, rhs_err,
                  declared == Curvature::Convex ? Relation::GreaterEqual : Relation::LessEqual,
                  options.error_factor, options, rule.descriptor);
  r.strict_probe = strict_for(probe, declared);
  r.probe_evidence = probe.evidence;
  r.equality_diagnosis =
      diagnose_dilates(K, L, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

VerificationReport verify_sl_invariance(const OrliczUnivariate& phi, const StarBody& K,
                                        const StarBody& L, const LinearMap& T,
                                        const QuadratureRule& rule,
                                        const VerifyOptions& options) {
  if (!(std::abs(T.determinant_abs() - 1.0) <= 1e-10)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "linear map is not unimodular: |det T| = " << T.determinant_abs();
    throw InvalidArgument(msg.str());
  }
  const int n = K.dimension();
  const auto lhs = dual_mixed_volume(phi, apply_linear(T, K), apply_linear(T, L), rule);
  const auto rhs = dual_mixed_volume(phi, K, L, rule);
  auto r = finish(TheoremId::SLInvariance, lhs.value, rhs.value, lhs.error_estimate,
                  rhs.error_estimate, Relation::Equal, 5.0, options, rule.descriptor);
  r.equality_diagnosis =
      diagnose_dilates(K, L, diagnosis_grid(n, options), options.dilate_tolerance);
  return r;
}

}  // namespace starorlicz
