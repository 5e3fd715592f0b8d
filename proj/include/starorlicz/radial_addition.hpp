#pragma once

#include <span>
#include <vector>

#include "starorlicz/orlicz_functions.hpp"
#include "starorlicz/star_body.hpp"

namespace starorlicz {

struct RadialSolveProblem {
  OrliczBivariate phi;
  std::vector<double> radii;
  double tau;

  // Checks arity and positivity of the radii and computes τ.
  static RadialSolveProblem make(OrliczBivariate phi, std::vector<double> radii);
};

// The unique c with φ(c/a_1, …, c/a_m) = 1, bracketed by [τ·min a, τ·max a].
double solve_radial(const RadialSolveProblem& problem);
double solve_radial(const OrliczBivariate& phi, double tau, std::span<const double> radii);

// φ-radial sum of m = arity(φ) bodies. Validates φ against its declared class.
StarBody orlicz_radial_sum(const OrliczBivariate& phi, std::vector<StarBody> bodies);
StarBody orlicz_radial_sum(const OrliczBivariate& phi, const StarBody& K, const StarBody& L);

// ρ = (ρ_K^p + ρ_L^p)^{1/p}, evaluated directly.
StarBody p_radial_sum_closed_form(double p, const StarBody& K, const StarBody& L);

struct LinearOrliczSpec {
  double alpha;
  double beta;
  OrliczUnivariate phi1;
  OrliczUnivariate phi2;

  // Checks α, β > 0, matching PhiTilde1 / PsiTilde1 tags and the sampled
  // class conditions of φ₁ and φ₂.
  static LinearOrliczSpec make(double alpha, double beta, OrliczUnivariate phi1,
                               OrliczUnivariate phi2);

  bool phi_tilde() const { return phi1.tag() == UnivariateClass::PhiTilde1; }
  // Root of α·φ₁(t) + β·φ₂(t) = 1.
  double tau() const;
  // τ₁ with α·φ₁(τ₁) + β·φ₂(τ₁/λ) = 1, the radius ratio of K +̃ λK to K.
  double dilate_root(double lambda) const;
};

// The unique c with α·φ₁(c/a) + β·φ₂(c/b) = 1.
double solve_linear_radial(const LinearOrliczSpec& spec, double tau, double a, double b);
double solve_linear_radial(double alpha, double beta, const OrliczUnivariate& phi1,
                           const OrliczUnivariate& phi2, double tau, double a, double b);

StarBody linear_orlicz_sum(const LinearOrliczSpec& spec, const StarBody& K, const StarBody& L);

// K +̃_{ε,φ₁,φ₂} L, the linear sum with α = 1, β = ε.
StarBody epsilon_sum(const OrliczUnivariate& phi1, const OrliczUnivariate& phi2,
                     const StarBody& K, const StarBody& L, double eps);

}  // namespace starorlicz
