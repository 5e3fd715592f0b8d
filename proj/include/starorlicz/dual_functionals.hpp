#pragma once

#include <vector>

#include "starorlicz/orlicz_functions.hpp"
#include "starorlicz/quadrature.hpp"
#include "starorlicz/star_body.hpp"

namespace starorlicz {

// Ṽ_φ(K, L) = (1/n)∫φ(ρ_K/ρ_L)·ρ_Kⁿ dσ
FunctionalValue dual_mixed_volume(const OrliczUnivariate& phi, const StarBody& K,
                                  const StarBody& L, const QuadratureRule& rule);

// S̃_φ(K) = n·Ṽ_φ(K, B)
FunctionalValue dual_surface_area(const OrliczUnivariate& phi, const StarBody& K,
                                  const QuadratureRule& rule);

// ω̃_φ(K) = (1/(nω_n))∫φ(1/ρ_K) dσ. Throws EvaluationError if it disagrees
// with Ṽ_φ(B, K)/ω_n by more than 1e-10 relative.
FunctionalValue harmonic_mean_radius(const OrliczUnivariate& phi, const StarBody& K,
                                     const QuadratureRule& rule);

struct VariationEstimate {
  std::vector<double> epsilons;
  std::vector<double> volumes;    // |K +̃_ε L|
  std::vector<double> quotients;  // (|K| − |K +̃_ε L|)/(nε)
  double volume_K = 0.0;
  double extrapolated_limit = 0.0;
  double extrapolation_error = 0.0;
  DerivativeEstimate derivative{};
  FunctionalValue target;  // Ṽ_{φ₂}(K, L)
  RuleDescriptor rule;

  // φ'₁(1)·limit, which the limit theorem equates with the target.
  double product() const { return derivative.value * extrapolated_limit; }
};

inline const std::vector<double>& default_epsilons() {
  static const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
  return eps;
}

// default_epsilons() divided by κ = max φ₂(ρ_K/ρ_L)/|φ'₁(1)| over the rule
// nodes when κ > 1, so that the relative perturbation of ρ_K stays below ε.
std::vector<double> scaled_epsilons(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                    const StarBody& K, const StarBody& L,
                                    const QuadratureRule& rule);

// Finite-difference quotients of |K +̃_ε L| extrapolated to ε = 0 by
// polynomial (Neville) extrapolation through all ε. The side of φ'₁(1)
// follows the class tag: left for PhiTilde1, right for PsiTilde1.
VariationEstimate first_variation(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                  const StarBody& K, const StarBody& L,
                                  const QuadratureRule& rule,
                                  const std::vector<double>& epsilons);

// Uses scaled_epsilons().
VariationEstimate first_variation(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                                  const StarBody& K, const StarBody& L,
                                  const QuadratureRule& rule);

// Value at 0 of the polynomial through (x_i, y_i).
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace starorlicz
