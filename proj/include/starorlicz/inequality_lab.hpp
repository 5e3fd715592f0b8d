#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starorlicz/orlicz_functions.hpp"
#include "starorlicz/probes.hpp"
#include "starorlicz/quadrature.hpp"
#include "starorlicz/radial_addition.hpp"
#include "starorlicz/star_body.hpp"

namespace starorlicz {

enum class TheoremId {
  DualOBM,
  LinearDualOBM,
  DualMinkowski,
  Isoperimetric,
  Urysohn,
  Comparison,
  SLInvariance
};
enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Verdict { Holds, Violated, EqualityWithinTol };
enum class Curvature { Convex, Concave };

const char* to_string(TheoremId id);
const char* to_string(Relation r);
const char* to_string(Verdict v);
const char* to_string(Curvature c);
TheoremId theorem_from_string(const std::string& s);
Curvature curvature_from_string(const std::string& s);
const std::vector<TheoremId>& all_theorems();

struct DilateDiagnosis {
  bool dilates = false;
  double lambda = 0.0;  // mean of ρ_L/ρ_K
  double max_relative_deviation = 0.0;
  std::size_t grid_size = 0;
};

struct VerifyOptions {
  double relative_floor = 1e-9;
  double error_factor = 10.0;
  double dilate_tolerance = 1e-6;
  std::size_t dilate_grid = 512;
  std::uint64_t seed = 42;
};

struct VerificationReport {
  TheoremId theorem = TheoremId::DualOBM;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  Relation direction = Relation::LessEqual;
  double margin = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Holds;
  std::optional<DilateDiagnosis> equality_diagnosis;
  bool strict_probe = false;  // strictness of the curvature probe
  std::string probe_evidence;
  RuleDescriptor rule;
};

// rhs − lhs for ≤, lhs − rhs for ≥, −|lhs − rhs| for =.
double margin_of(double lhs, double rhs, Relation direction);
// equality_within_tol if |margin| ≤ tolerance, otherwise holds or violated by sign.
Verdict verdict_of(double margin, double tolerance);

// Ratios ρ_L/ρ_K on `grid`; dilates when max |ratio − λ| ≤ tol·λ.
DilateDiagnosis diagnose_dilates(const StarBody& K, const StarBody& L,
                                 std::span<const Direction> grid, double tol);
std::optional<double> dilate_detector(const StarBody& K, const StarBody& L,
                                      std::span<const Direction> grid, double tol = 1e-6);

// Curvature of F_φ(x₁, x₂) = φ(x₁^{-1/n}, x₂^{-1/n}) on a 10×10 log grid over [1e-2, 1e2].
CurvatureProbe probe_f_phi(const OrliczBivariate& phi, int n);
// Curvature of F(t) = φ(t^{-1/n}) on the default probe axis.
CurvatureProbe probe_f(const OrliczUnivariate& phi, int n);

VerificationReport verify_dual_obm(const OrliczBivariate& phi, const StarBody& K,
                                   const StarBody& L, const QuadratureRule& rule,
                                   Curvature declared, const VerifyOptions& options = {});

VerificationReport verify_linear_dual_obm(const LinearOrliczSpec& spec, const StarBody& K,
                                          const StarBody& L, const QuadratureRule& rule,
                                          Curvature declared, const VerifyOptions& options = {});

VerificationReport verify_dual_minkowski(const OrliczUnivariate& phi, const StarBody& K,
                                         const StarBody& L, const QuadratureRule& rule,
                                         const VerifyOptions& options = {});

VerificationReport verify_isoperimetric(const OrliczUnivariate& phi, const StarBody& K,
                                        const QuadratureRule& rule,
                                        const VerifyOptions& options = {});

VerificationReport verify_urysohn(const OrliczUnivariate& phi, const StarBody& K,
                                  const QuadratureRule& rule, const VerifyOptions& options = {});

// H = φ∘ψ⁻¹; H convex gives Ṽ_φ/|K| ≥ H(Ṽ_ψ/|K|), concave the reverse.
VerificationReport verify_comparison(const OrliczUnivariate& phi, const OrliczUnivariate& psi,
                                     const StarBody& K, const StarBody& L,
                                     const QuadratureRule& rule, Curvature declared,
                                     const VerifyOptions& options = {});

// Ṽ_φ(TK, TL) = Ṽ_φ(K, L) for |det T| = 1; tolerance uses 5× the error estimates.
VerificationReport verify_sl_invariance(const OrliczUnivariate& phi, const StarBody& K,
                                        const StarBody& L, const LinearMap& T,
                                        const QuadratureRule& rule,
                                        const VerifyOptions& options = {});

}  // namespace starorlicz
