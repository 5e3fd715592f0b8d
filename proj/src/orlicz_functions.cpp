#include "starorlicz/orlicz_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "starorlicz/errors.hpp"
#include "starorlicz/probes.hpp"
#include "starorlicz/root_finding.hpp"

namespace starorlicz {
namespace {

constexpr double kNormalizationTol = 1e-12;
constexpr double kMonotoneNoise = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

void check_finite_param(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

// Number of points per axis for an m-variate product probe.
std::size_t axis_budget(int m) {
  if (m <= 2) return 65;
  if (m == 3) return 17;
  if (m == 4) return 9;
  return 5;
}

std::vector<double> subsample(const std::vector<double>& axis, std::size_t count) {
  if (axis.size() <= count) return axis;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(axis[k * (axis.size() - 1) / (count - 1)]);
  }
  return out;
}

Violation make_violation(Violation::Kind kind, int coordinate, std::vector<double> point,
                         std::string detail) {
  return Violation{kind, coordinate, std::move(point), std::move(detail)};
}

// Φ̃ checks for f on the product of `axis` (whose first entry is 0).
void check_phi_tilde(const std::function<double(std::span<const double>)>& f, int m,
                     const std::vector<double>& axis, const char* coords,
                     ValidationReport& report) {
  const std::size_t k = axis.size();
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= k;

  std::vector<double> values(total);
  std::vector<std::size_t> index(m, 0);
  std::vector<double> point(m);
  auto decode = [&](std::size_t flat) {
    for (int i = m - 1; i >= 0; --i) {
      index[i] = flat % k;
      flat /= k;
    }
    for (int i = 0; i < m; ++i) point[i] = axis[index[i]];
  };

  std::size_t reported_nonfinite = 0, reported_sign = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    decode(flat);
    const double v = f(point);
    values[flat] = v;
    if (!std::isfinite(v)) {
      if (reported_nonfinite++ < 3) {
        report.violations.push_back(make_violation(
            Violation::Kind::NonFinite, 0, point,
            std::string("non-finite value ") + fmt(v) + " at probe point" + coords));
      }
    } else if (v < 0.0) {
      if (reported_sign++ < 3) {
        report.violations.push_back(make_violation(
            Violation::Kind::Sign, 0, point,
            std::string("negative value ") + fmt(v) + " at probe point" + coords));
      }
    }
  }

  std::size_t stride = 1;
  for (int coord = m - 1; coord >= 0; --coord) {
    bool reported = false;
    for (std::size_t flat = 0; flat < total && !reported; ++flat) {
      decode(flat);
      if (index[coord] + 1 >= k) continue;
      const double a = values[flat];
      const double b = values[flat + stride];
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      const double noise = kMonotoneNoise * std::max(std::abs(a), std::abs(b));
      bool bad = b < a - noise;
      // The whole axis-aligned segment must rise strictly.
      if (!bad && index[coord] == 0) {
        const double last = values[flat + stride * (k - 1)];
        bad = std::isfinite(last) && !(last > a);
      }
      if (bad) {
        std::ostringstream detail;
        detail << "not strictly increasing in coordinate " << coord + 1 << coords << ": f = "
               << fmt(a) << " then " << fmt(b);
        report.violations.push_back(
            make_violation(Violation::Kind::Monotonicity, coord + 1, point, detail.str()));
        reported = true;
      }
    }
    stride *= k;
  }

  std::vector<double> origin(m, 0.0);
  const double at_origin = f(origin);
  if (!(std::abs(at_origin) <= kNormalizationTol)) {
    report.violations.push_back(make_violation(Violation::Kind::Normalization, 0, origin,
                                               "value at origin is " + fmt(at_origin) +
                                                   ", expected 0" + coords));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    const double v = f(e);
    if (!(std::abs(v - 1.0) <= kNormalizationTol)) {
      std::ostringstream detail;
      detail << "value at e_" << i + 1 << " is " << fmt(v) << ", expected 1" << coords;
      report.violations.push_back(
          make_violation(Violation::Kind::Normalization, i + 1, e, detail.str()));
    }
  }
}

}  // namespace

const char* to_string(BivariateClass c) {
  return c == BivariateClass::PhiTilde ? "PhiTilde" : "PsiTilde";
}

const char* to_string(UnivariateClass c) {
  switch (c) {
    case UnivariateClass::Phi:
      return "Phi";
    case UnivariateClass::Psi:
      return "Psi";
    case UnivariateClass::PhiTilde1:
      return "PhiTilde1";
    case UnivariateClass::PsiTilde1:
      return "PsiTilde1";
    case UnivariateClass::Unclassified:
      return "Unclassified";
  }
  return "Unclassified";
}

UnivariateClass univariate_class_from_string(const std::string& s) {
  if (s == "Phi") return UnivariateClass::Phi;
  if (s == "Psi") return UnivariateClass::Psi;
  if (s == "PhiTilde1") return UnivariateClass::PhiTilde1;
  if (s == "PsiTilde1") return UnivariateClass::PsiTilde1;
  if (s == "Unclassified") return UnivariateClass::Unclassified;
  throw InvalidArgument("unknown univariate class '" + s + "'");
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Monotonicity:
      return "monotonicity";
    case Violation::Kind::Normalization:
      return "normalization";
    case Violation::Kind::Sign:
      return "sign";
    case Violation::Kind::NonFinite:
      return "non_finite";
    case Violation::Kind::Curvature:
      return "curvature";
  }
  return "unknown";
}

bool ValidationReport::has(Violation::Kind kind, int coordinate) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
    return v.kind == kind && (coordinate < 0 || v.coordinate == coordinate);
  });
}

std::string ValidationReport::summary(std::size_t max_items) const {
  if (violations.empty()) return "no violations";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < max_items; ++i) {
    out << "; [" << to_string(violations[i].kind) << "] " << violations[i].detail;
  }
  return out.str();
}

// ---- OrliczUnivariate -------------------------------------------------------

OrliczUnivariate::OrliczUnivariate(Eval eval, UnivariateClass tag, UnivariateDescriptor descriptor,
                                   std::optional<double> left, std::optional<double> right)
    : eval_(std::move(eval)),
      tag_(tag),
      descriptor_(std::move(descriptor)),
      left_(left),
      right_(right) {
  if (!eval_) throw InvalidArgument("univariate Orlicz function needs a callable");
}

OrliczUnivariate OrliczUnivariate::with_tag(UnivariateClass tag) const {
  OrliczUnivariate copy = *this;
  copy.tag_ = tag;
  return copy;
}

std::string OrliczUnivariate::name() const {
  return std::visit(Overloaded{
                        [](const descriptor::Power& d) { return "t^" + fmt(d.p); },
                        [](const descriptor::Constant& d) { return fmt(d.c); },
                        [](const descriptor::ArctanInversePower& d) {
                          return "arctan(t^-" + fmt(d.k) + ")";
                        },
                        [](const descriptor::Log1pInversePower& d) {
                          return "ln(1+t^-" + fmt(d.k) + ")";
                        },
                        [](const descriptor::CustomUnivariate& d) { return d.name; },
                    },
                    descriptor_);
}

OrliczUnivariate make_power(double p) {
  check_finite_param(p, "power exponent");
  if (p == 0.0) throw InvalidArgument("power exponent must be nonzero (use a constant)");
  const UnivariateClass tag = p > 0.0 ? UnivariateClass::PhiTilde1 : UnivariateClass::PsiTilde1;
  OrliczUnivariate::Eval eval;
  if (p == 1.0) {
    eval = [](double t) { return t; };
  } else if (p == -1.0) {
    eval = [](double t) { return 1.0 / t; };
  } else if (p == 2.0) {
    eval = [](double t) { return t * t; };
  } else {
    eval = [p](double t) { return std::pow(t, p); };
  }
  return OrliczUnivariate(std::move(eval), tag, descriptor::Power{p}, p, p);
}

OrliczUnivariate make_constant(double c) {
  check_finite_param(c, "constant");
  if (!(c > 0.0)) throw InvalidArgument("constant Orlicz function must be positive");
  return OrliczUnivariate([c](double) { return c; }, UnivariateClass::Unclassified,
                          descriptor::Constant{c}, 0.0, 0.0);
}

OrliczUnivariate make_arctan_inverse_power(double k) {
  check_finite_param(k, "exponent");
  if (!(k > 0.0)) throw InvalidArgument("arctan(t^-k) needs k > 0");
  return OrliczUnivariate([k](double t) { return std::atan(std::pow(t, -k)); },
                          UnivariateClass::Unclassified, descriptor::ArctanInversePower{k},
                          -0.5 * k, -0.5 * k);
}

OrliczUnivariate make_log1p_inverse_power(double k) {
  check_finite_param(k, "exponent");
  if (!(k > 0.0)) throw InvalidArgument("ln(1+t^-k) needs k > 0");
  return OrliczUnivariate([k](double t) { return std::log1p(std::pow(t, -k)); },
                          UnivariateClass::Unclassified, descriptor::Log1pInversePower{k},
                          -0.5 * k, -0.5 * k);
}

OrliczUnivariate make_custom_univariate(std::string name, OrliczUnivariate::Eval eval,
                                        UnivariateClass tag, std::optional<double> left,
                                        std::optional<double> right) {
  return OrliczUnivariate(std::move(eval), tag, descriptor::CustomUnivariate{std::move(name)},
                          left, right);
}

OrliczUnivariate tilde(const OrliczUnivariate& phi) {
  if (const auto* power = std::get_if<descriptor::Power>(&phi.descriptor())) {
    return make_power(-power->p);
  }
  if (std::holds_alternative<descriptor::Constant>(phi.descriptor())) return phi;
  UnivariateClass tag = UnivariateClass::Unclassified;
  if (phi.tag() == UnivariateClass::PhiTilde1) tag = UnivariateClass::PsiTilde1;
  if (phi.tag() == UnivariateClass::PsiTilde1) tag = UnivariateClass::PhiTilde1;
  // d/dt φ(1/t) at 1 is -φ'(1) with the sides exchanged.
  std::optional<double> left, right;
  if (phi.right_derivative_at_one()) left = -*phi.right_derivative_at_one();
  if (phi.left_derivative_at_one()) right = -*phi.left_derivative_at_one();
  auto eval = phi.callable();
  return make_custom_univariate("tilde(" + phi.name() + ")",
                                [eval](double t) { return eval(1.0 / t); }, tag, left, right);
}

std::function<double(double)> f_transform(const OrliczUnivariate& phi, int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  auto eval = phi.callable();
  const double e = -1.0 / n;
  return [eval, e](double t) { return eval(std::pow(t, e)); };
}

// ---- OrliczBivariate --------------------------------------------------------

OrliczBivariate::OrliczBivariate(Eval eval, int arity, BivariateClass tag,
                                 BivariateDescriptor descriptor)
    : eval_(std::move(eval)), arity_(arity), tag_(tag), descriptor_(std::move(descriptor)) {
  if (!eval_) throw InvalidArgument("Orlicz function needs a callable");
  if (arity_ < 1) throw InvalidArgument("Orlicz function arity must be positive");
}

std::string OrliczBivariate::name() const {
  return std::visit(
      Overloaded{
          [](const descriptor::PowerSum& d) {
            return "sum x_i^" + fmt(d.exponent()) + " (m=" + std::to_string(d.m) + ")";
          },
          [](const descriptor::WeightedSum& d) {
            return fmt(d.alpha) + "*" + d.phi1->name() + "(x) + " + fmt(d.beta) + "*" +
                   d.phi2->name() + "(y)";
          },
          [](const descriptor::Tilde& d) { return "tilde(" + d.source->name() + ")"; },
          [](const descriptor::CustomBivariate& d) { return d.name; },
      },
      descriptor_);
}

OrliczBivariate make_power_sum(double p, int m, PowerForm form) {
  check_finite_param(p, "power-sum exponent");
  if (p == 0.0) throw InvalidArgument("power-sum exponent p must be nonzero");
  if (m < 2) throw InvalidArgument("power-sum arity must be at least 2");
  const descriptor::PowerSum d{p, form, m};
  const double e = d.exponent();
  const BivariateClass tag = e > 0.0 ? BivariateClass::PhiTilde : BivariateClass::PsiTilde;
  OrliczBivariate::Eval eval;
  if (e == 1.0) {
    eval = [](std::span<const double> x) {
      double s = 0.0;
      for (double xi : x) s += xi;
      return s;
    };
  } else if (e == -1.0) {
    eval = [](std::span<const double> x) {
      double s = 0.0;
      for (double xi : x) s += 1.0 / xi;
      return s;
    };
  } else {
    eval = [e](std::span<const double> x) {
      double s = 0.0;
      for (double xi : x) s += std::pow(xi, e);
      return s;
    };
  }
  return OrliczBivariate(std::move(eval), m, tag, d);
}

OrliczBivariate make_weighted_sum(double alpha, double beta, const OrliczUnivariate& phi1,
                                  const OrliczUnivariate& phi2) {
  check_finite_param(alpha, "alpha");
  check_finite_param(beta, "beta");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidArgument("weights must be positive");
  BivariateClass tag;
  if (phi1.tag() == UnivariateClass::PhiTilde1 && phi2.tag() == UnivariateClass::PhiTilde1) {
    tag = BivariateClass::PhiTilde;
  } else if (phi1.tag() == UnivariateClass::PsiTilde1 &&
             phi2.tag() == UnivariateClass::PsiTilde1) {
    tag = BivariateClass::PsiTilde;
  } else {
    throw InvalidArgument(
        "weighted sum needs phi1, phi2 both PhiTilde1 or both PsiTilde1 (got " +
        std::string(to_string(phi1.tag())) + ", " + to_string(phi2.tag()) + ")");
  }
  auto f1 = phi1.callable();
  auto f2 = phi2.callable();
  return OrliczBivariate(
      [alpha, beta, f1, f2](std::span<const double> x) {
        return alpha * f1(x[0]) + beta * f2(x[1]);
      },
      2, tag,
      descriptor::WeightedSum{alpha, beta, std::make_shared<const OrliczUnivariate>(phi1),
                              std::make_shared<const OrliczUnivariate>(phi2)});
}

OrliczBivariate make_custom_bivariate(std::string name, int arity, BivariateClass tag,
                                      OrliczBivariate::Eval eval) {
  return OrliczBivariate(std::move(eval), arity, tag,
                         descriptor::CustomBivariate{std::move(name)});
}

OrliczBivariate tilde(const OrliczBivariate& phi) {
  if (const auto* t = std::get_if<descriptor::Tilde>(&phi.descriptor())) {
    return *t->source;
  }
  if (const auto* ps = std::get_if<descriptor::PowerSum>(&phi.descriptor())) {
    const PowerForm flipped =
        ps->form == PowerForm::Increasing ? PowerForm::Decreasing : PowerForm::Increasing;
    return make_power_sum(ps->p, ps->m, flipped);
  }
  const BivariateClass tag =
      phi.tag() == BivariateClass::PhiTilde ? BivariateClass::PsiTilde : BivariateClass::PhiTilde;
  const int m = phi.arity();
  auto source = std::make_shared<const OrliczBivariate>(phi);
  return OrliczBivariate(
      [source, m](std::span<const double> x) {
        std::vector<double> inv(m);
        for (int i = 0; i < m; ++i) inv[i] = 1.0 / x[i];
        return (*source)(inv);
      },
      m, tag, descriptor::Tilde{source});
}

// ---- transforms -------------------------------------------------------------

TransformedBivariate::TransformedBivariate(OrliczBivariate source, TransformKind kind,
                                           int dimension)
    : source_(std::move(source)), kind_(kind), dimension_(dimension) {
  if (kind_ == TransformKind::FSubPhi && dimension_ < 1) {
    throw InvalidArgument("F_phi transform needs a positive dimension");
  }
}

double TransformedBivariate::operator()(std::span<const double> x) const {
  std::vector<double> y(x.size());
  if (kind_ == TransformKind::Tilde) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 / x[i];
  } else {
    const double e = -1.0 / dimension_;
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(x[i], e);
  }
  return source_(y);
}

TransformedBivariate f_transform(const OrliczBivariate& phi, int n) {
  return TransformedBivariate(phi, TransformKind::FSubPhi, n);
}

// ---- validation -------------------------------------------------------------

std::vector<double> default_probe_axis() { return log_grid(1e-3, 1e3, 64); }

ValidationReport validate_class(const OrliczBivariate& phi, std::span<const double> axis) {
  std::vector<double> base =
      axis.empty() ? default_probe_axis() : std::vector<double>(axis.begin(), axis.end());
  std::sort(base.begin(), base.end());
  base.erase(std::remove_if(base.begin(), base.end(), [](double v) { return !(v > 0.0); }),
             base.end());
  if (base.empty()) throw InvalidArgument("probe axis needs positive points");
  const int m = phi.arity();
  base = subsample(base, axis_budget(m) - 1);
  base.insert(base.begin(), 0.0);

  ValidationReport report;
  if (phi.tag() == BivariateClass::PhiTilde) {
    check_phi_tilde([&phi](std::span<const double> x) { return phi(x); }, m, base, "", report);
  } else {
    // φ ∈ Ψ̃ iff φ(1/x) ∈ Φ̃; 1/0 = +∞ realizes the closed-orthant limit.
    check_phi_tilde(
        [&phi, m](std::span<const double> x) {
          std::vector<double> inv(m);
          for (int i = 0; i < m; ++i) inv[i] = 1.0 / x[i];
          return phi(inv);
        },
        m, base, " (reciprocal coordinates)", report);
  }
  return report;
}

ValidationReport validate_class(const OrliczUnivariate& phi, int n, std::span<const double> grid) {
  std::vector<double> points =
      grid.empty() ? default_probe_axis() : std::vector<double>(grid.begin(), grid.end());
  std::sort(points.begin(), points.end());
  ValidationReport report;

  std::size_t bad = 0;
  for (double t : points) {
    const double v = phi(t);
    if (!std::isfinite(v)) {
      if (bad++ < 3) {
        report.violations.push_back(make_violation(Violation::Kind::NonFinite, 0, {t},
                                                   "non-finite value " + fmt(v)));
      }
    } else if (!(v > 0.0) && phi.tag() != UnivariateClass::Unclassified) {
      if (bad++ < 3) {
        report.violations.push_back(
            make_violation(Violation::Kind::Sign, 0, {t}, "non-positive value " + fmt(v)));
      }
    }
  }

  auto check_tilde1 = [&](bool increasing) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      const double a = phi(points[i]);
      const double b = phi(points[i + 1]);
      const double noise = kMonotoneNoise * std::max(std::abs(a), std::abs(b));
      const bool wrong = increasing ? (b < a - noise) : (b > a + noise);
      if (wrong) {
        report.violations.push_back(make_violation(
            Violation::Kind::Monotonicity, 1, {points[i], points[i + 1]},
            std::string("not ") + (increasing ? "increasing" : "decreasing") + " between " +
                fmt(points[i]) + " and " + fmt(points[i + 1])));
        break;
      }
    }
    const double one = phi(1.0);
    if (!(std::abs(one - 1.0) <= kNormalizationTol)) {
      report.violations.push_back(make_violation(Violation::Kind::Normalization, 1, {1.0},
                                                 "value at 1 is " + fmt(one) + ", expected 1"));
    }
    const double limit_arg = increasing ? 0.0 : std::numeric_limits<double>::infinity();
    const double limit = phi(limit_arg);
    if (!(std::abs(limit) <= kNormalizationTol)) {
      report.violations.push_back(make_violation(
          Violation::Kind::Normalization, 0, {limit_arg},
          std::string("limit at ") + (increasing ? "0" : "infinity") + " is " + fmt(limit) +
              ", expected 0"));
    }
  };

  switch (phi.tag()) {
    case UnivariateClass::PhiTilde1:
      check_tilde1(true);
      break;
    case UnivariateClass::PsiTilde1:
      check_tilde1(false);
      break;
    case UnivariateClass::Phi:
    case UnivariateClass::Psi: {
      const auto probe = probe_curvature(f_transform(phi, n), points);
      const bool is_phi = phi.tag() == UnivariateClass::Phi;
      const bool ok = probe.constant || (is_phi ? probe.convex : (probe.concave && probe.increasing));
      if (!ok) {
        report.violations.push_back(make_violation(
            Violation::Kind::Curvature, 0, {},
            std::string("F(t) = phi(t^{-1/n}) is not ") +
                (is_phi ? "convex" : "increasing and concave") + " on the probe grid: " +
                probe.evidence));
      }
      break;
    }
    case UnivariateClass::Unclassified:
      break;
  }
  return report;
}

// ---- scalar quantities ------------------------------------------------------

double solve_tau(const OrliczBivariate& phi) {
  const int m = phi.arity();
  std::vector<double> x(m);
  auto g = [&](double t) {
    std::fill(x.begin(), x.end(), t);
    return phi(x) - 1.0;
  };
  const bool phi_tilde = phi.tag() == BivariateClass::PhiTilde;
  const RootResult r = phi_tilde ? expand_and_solve(g, 0.0, 1.0) : expand_and_solve(g, 1.0, 2.0);
  const double tau = r.root;
  if (phi_tilde ? !(tau > 0.0 && tau < 1.0) : !(tau > 1.0 && std::isfinite(tau))) {
    throw InvalidArgument("diagonal root tau = " + fmt(tau) + " lies outside the range of the " +
                          to_string(phi.tag()) + " class; the function is not admissible");
  }
  const double residual = g(tau);
  if (!(std::abs(residual) <= 1e-12)) {
    throw SolverError("diagonal root residual " + fmt(residual) + " exceeds 1e-12",
                      {{tau, tau, residual, residual}});
  }
  return tau;
}

DerivativeEstimate one_sided_derivative_at_one(const OrliczUnivariate& phi, Side side) {
  const auto& analytic =
      side == Side::Left ? phi.left_derivative_at_one() : phi.right_derivative_at_one();
  if (analytic) {
    if (!std::isfinite(*analytic)) {
      throw EvaluationError("one-sided derivative at 1 does not exist or is not finite");
    }
    return {*analytic, 0.0, true, side};
  }
  constexpr double h = 1e-4;
  const double f1 = phi(1.0);
  auto quotient = [&](double step) {
    return side == Side::Left ? (f1 - phi(1.0 - step)) / step : (phi(1.0 + step) - f1) / step;
  };
  const double coarse = quotient(h);
  const double fine = quotient(0.5 * h);
  const double value = 2.0 * fine - coarse;
  const double error = std::abs(value - fine);
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw EvaluationError("one-sided derivative at 1 does not exist or is not finite (estimate " +
                          fmt(value) + ")");
  }
  return {value, error, false, side};
}

}  // namespace starorlicz
