#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace starorlicz {

// Φ̃_m (increasing, φ(0) = 0, φ(e_i) = 1) and Ψ̃_m (coordinate-reciprocal
// transform lies in Φ̃_m).
enum class BivariateClass { PhiTilde, PsiTilde };

// Φ / Ψ are the inequality classes decided by the curvature of
// F(t) = φ(t^{-1/n}); PhiTilde1 / PsiTilde1 are the m = 1 addition classes.
enum class UnivariateClass { Phi, Psi, PhiTilde1, PsiTilde1, Unclassified };

enum class PowerForm { Increasing, Decreasing };
enum class Side { Left, Right };

const char* to_string(BivariateClass c);
const char* to_string(UnivariateClass c);
UnivariateClass univariate_class_from_string(const std::string& s);

class OrliczUnivariate;
class OrliczBivariate;

namespace descriptor {

struct Power {
  double p;
};
struct Constant {
  double c;
};
// arctan(t^{-k})
struct ArctanInversePower {
  double k;
};
// ln(1 + t^{-k})
struct Log1pInversePower {
  double k;
};
struct CustomUnivariate {
  std::string name;
};

// Σ x_i^{e} with e = p for the increasing form and e = -p for the decreasing one.
struct PowerSum {
  double p;
  PowerForm form;
  int m;
  double exponent() const { return form == PowerForm::Increasing ? p : -p; }
};
// α·φ₁(x₁) + β·φ₂(x₂)
struct WeightedSum {
  double alpha;
  double beta;
  std::shared_ptr<const OrliczUnivariate> phi1;
  std::shared_ptr<const OrliczUnivariate> phi2;
};
struct Tilde {
  std::shared_ptr<const OrliczBivariate> source;
};
struct CustomBivariate {
  std::string name;
};

}  // namespace descriptor

using UnivariateDescriptor =
    std::variant<descriptor::Power, descriptor::Constant, descriptor::ArctanInversePower,
                 descriptor::Log1pInversePower, descriptor::CustomUnivariate>;
using BivariateDescriptor = std::variant<descriptor::PowerSum, descriptor::WeightedSum,
                                         descriptor::Tilde, descriptor::CustomBivariate>;

/// A positive function on (0, ∞) with a declared class and optional analytic
/// one-sided derivatives at t = 1. Immutable; copies share the callable.
class OrliczUnivariate {
 public:
  using Eval = std::function<double(double)>;

  OrliczUnivariate(Eval eval, UnivariateClass tag, UnivariateDescriptor descriptor,
                   std::optional<double> left_derivative_at_one = std::nullopt,
                   std::optional<double> right_derivative_at_one = std::nullopt);

  double operator()(double t) const { return eval_(t); }

  UnivariateClass tag() const noexcept { return tag_; }
  OrliczUnivariate with_tag(UnivariateClass tag) const;

  const std::optional<double>& left_derivative_at_one() const noexcept { return left_; }
  const std::optional<double>& right_derivative_at_one() const noexcept { return right_; }
  const UnivariateDescriptor& descriptor() const noexcept { return descriptor_; }
  const Eval& callable() const noexcept { return eval_; }
  std::string name() const;

 private:
  Eval eval_;
  UnivariateClass tag_;
  UnivariateDescriptor descriptor_;
  std::optional<double> left_;
  std::optional<double> right_;
};

/// An m-variate Orlicz function in Φ̃_m or Ψ̃_m. Φ̃ functions are evaluated on
/// the closed orthant, Ψ̃ functions on the open one (+∞ is accepted as the
/// limit argument used by the tilde transform).
class OrliczBivariate {
 public:
  using Eval = std::function<double(std::span<const double>)>;

  OrliczBivariate(Eval eval, int arity, BivariateClass tag, BivariateDescriptor descriptor);

  double operator()(std::span<const double> x) const { return eval_(x); }
  double operator()(double x, double y) const {
    const double xy[2] = {x, y};
    return eval_(std::span<const double>(xy, 2));
  }

  int arity() const noexcept { return arity_; }
  BivariateClass tag() const noexcept { return tag_; }
  const BivariateDescriptor& descriptor() const noexcept { return descriptor_; }
  std::string name() const;

 private:
  Eval eval_;
  int arity_;
  BivariateClass tag_;
  BivariateDescriptor descriptor_;
};

// ---- construction ---------------------------------------------------------

OrliczUnivariate make_power(double p);
OrliczUnivariate make_constant(double c);
OrliczUnivariate make_arctan_inverse_power(double k);
OrliczUnivariate make_log1p_inverse_power(double k);
OrliczUnivariate make_custom_univariate(std::string name, OrliczUnivariate::Eval eval,
                                        UnivariateClass tag,
                                        std::optional<double> left = std::nullopt,
                                        std::optional<double> right = std::nullopt);

// Σ x_i^{p} (increasing form, p > 0 gives Φ̃_m) or Σ x_i^{-p} (decreasing
// form, p > 0 gives Ψ̃_m). The class follows the sign of the effective exponent.
OrliczBivariate make_power_sum(double p, int m, PowerForm form);

// α·φ₁(x) + β·φ₂(y); φ₁, φ₂ must both be PhiTilde1 or both PsiTilde1.
OrliczBivariate make_weighted_sum(double alpha, double beta, const OrliczUnivariate& phi1,
                                  const OrliczUnivariate& phi2);

OrliczBivariate make_custom_bivariate(std::string name, int arity, BivariateClass tag,
                                      OrliczBivariate::Eval eval);

// φ̃(x) = φ(1/x₁, …, 1/x_m); swaps Φ̃ and Ψ̃.
OrliczBivariate tilde(const OrliczBivariate& phi);
// φ̃(t) = φ(1/t)
OrliczUnivariate tilde(const OrliczUnivariate& phi);

// ---- transforms -----------------------------------------------------------

enum class TransformKind { Tilde, FSubPhi };

class TransformedBivariate {
 public:
  TransformedBivariate(OrliczBivariate source, TransformKind kind, int dimension = 0);

  double operator()(std::span<const double> x) const;
  double operator()(double x, double y) const {
    const double xy[2] = {x, y};
    return (*this)(std::span<const double>(xy, 2));
  }

  const OrliczBivariate& source() const noexcept { return source_; }
  TransformKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }

 private:
  OrliczBivariate source_;
  TransformKind kind_;
  int dimension_;
};

// F_φ(x₁, x₂) = φ(x₁^{-1/n}, x₂^{-1/n})
TransformedBivariate f_transform(const OrliczBivariate& phi, int n);
// F(t) = φ(t^{-1/n})
std::function<double(double)> f_transform(const OrliczUnivariate& phi, int n);

// ---- validation -----------------------------------------------------------

struct Violation {
  enum class Kind { Monotonicity, Normalization, Sign, NonFinite, Curvature };
  Kind kind;
  int coordinate = 0;  // 1-based; 0 when not tied to a coordinate
  std::vector<double> point;
  std::string detail;
};

const char* to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Kind kind, int coordinate = -1) const;
  std::string summary(std::size_t max_items = 5) const;
};

// 64 log-spaced points over [1e-3, 1e3].
std::vector<double> default_probe_axis();

// Checks the declared Φ̃/Ψ̃ class on the product grid built from `axis`
// (0 is added for the closed-orthant checks). Non-finite values are reported
// as violations.
ValidationReport validate_class(const OrliczBivariate& phi,
                                std::span<const double> axis = {});

// Checks the declared univariate class; Phi/Psi probe F(t) = φ(t^{-1/n}).
ValidationReport validate_class(const OrliczUnivariate& phi, int n,
                                std::span<const double> grid = {});

// ---- scalar quantities ----------------------------------------------------

// The unique τ with φ(τ, …, τ) = 1; 0 < τ < 1 on Φ̃, τ > 1 on Ψ̃.
double solve_tau(const OrliczBivariate& phi);

struct DerivativeEstimate {
  double value;
  double error;
  bool analytic;
  Side side;
};

// Analytic value from the descriptor when available, otherwise a one-sided
// difference with one Richardson step (h = 1e-4 and h/2).
DerivativeEstimate one_sided_derivative_at_one(const OrliczUnivariate& phi, Side side);

}  // namespace starorlicz
