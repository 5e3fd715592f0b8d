#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "starorlicz/star_body.hpp"

namespace starorlicz {

enum class RuleKind { CircleTrapezoid, SphereProductGauss, MonteCarlo };

const char* to_string(RuleKind kind);

struct RuleDescriptor {
  RuleKind kind = RuleKind::CircleTrapezoid;
  std::size_t N = 0;        // total node count
  std::size_t n_theta = 0;  // product rule only
  std::size_t n_phi = 0;    // product rule only
  std::uint64_t seed = 0;   // Monte Carlo only
};

/// Nodes and positive weights on S^{n-1}; the weights sum to σ(S^{n-1}) = n·ω_n.
struct QuadratureRule {
  int dimension = 0;
  RuleDescriptor descriptor;
  std::vector<Direction> nodes;
  std::vector<double> weights;

  RuleKind kind() const noexcept { return descriptor.kind; }
  // "spectral", "algebraic" or "1/sqrt(N)".
  const char* error_model() const;
};

// ω_n, the volume of the unit ball in R^n.
double unit_ball_volume(int n);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule circle_trapezoid(std::size_t N);
QuadratureRule sphere_product_gauss(std::size_t n_theta, std::size_t n_phi);
QuadratureRule monte_carlo(int n, std::size_t N, std::uint64_t seed = 42);

// Deterministic rule for n = 2, 3 and Monte Carlo above. size1 is N (n = 2 or
// Monte Carlo) or N_θ (n = 3, with N_φ = size2 or 2·N_θ). Zero selects the
// default resolution: 2048, 64 × 128, 2·10⁵.
QuadratureRule make_rule(int n, std::size_t size1 = 0, std::size_t size2 = 0,
                         std::uint64_t seed = 42);

struct FunctionalValue {
  double value = 0.0;
  double error_estimate = 0.0;
  RuleDescriptor rule;
};

// Values of an integrand over a batch of directions.
using BatchIntegrand = std::function<std::vector<double>(std::span<const Direction>)>;

// Σ wᵢ f(uᵢ). The error estimate is the difference to the half-resolution
// rule (deterministic rules, floored by the rounding bound of the sum) or the
// standard error (Monte Carlo). Node values may be computed on several
// threads, capped by STAR_ORLICZ_THREADS; the sum itself is sequential.
FunctionalValue integrate(const BatchIntegrand& f, const QuadratureRule& rule);
FunctionalValue integrate(const std::function<double(const Direction&)>& f,
                          const QuadratureRule& rule);

// Evaluates f on the nodes, possibly in parallel.
std::vector<double> evaluate_on(const BatchIntegrand& f, std::span<const Direction> nodes);

// |K| = (1/n)∫ρ_Kⁿ dσ
FunctionalValue volume(const StarBody& K, const QuadratureRule& rule);

// Ball(r) with r = (|K|/ω_n)^{1/n}.
StarBody ball_equivalent(const StarBody& K, const QuadratureRule& rule);

}  // namespace starorlicz
