#include "starorlicz/suites.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "starorlicz/errors.hpp"

namespace starorlicz {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class T>
T pick(Rng& rng, const std::vector<T>& values) {
  return values[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(values.size()) - 1))];
}

struct BivariateChoice {
  OrliczBivariate phi;
  Curvature declared;
};

// Φ̃₂ and Ψ̃₂ families with known curvature of F_φ.
BivariateChoice pick_bivariate(int n, Rng& rng) {
  const double nd = n;
  switch (rng.uniform_int(0, 3)) {
    case 0: {
      // x^{-p} + y^{-p}: F_φ = x^{p/n} + y^{p/n}
      const double p = pick(rng, std::vector<double>{0.5, 1.0, 1.5, nd, nd + 1.0, nd + 2.0});
      return {make_power_sum(p, 2, PowerForm::Decreasing),
              p >= nd ? Curvature::Convex : Curvature::Concave};
    }
    case 1: {
      const double p = pick(rng, std::vector<double>{0.5, 1.0, 2.0, 3.0});
      return {make_power_sum(p, 2, PowerForm::Increasing), Curvature::Convex};
    }
    case 2: {
      const std::vector<double> exps{0.5, 1.0, 2.0, 3.0};
      return {make_weighted_sum(1.0, 1.0, make_power(pick(rng, exps)), make_power(pick(rng, exps))),
              Curvature::Convex};
    }
    default: {
      const bool convex = rng.uniform() < 0.5;
      const std::vector<double> exps = convex ? std::vector<double>{nd + 0.5, nd + 1.0, 2.0 * nd}
                                              : std::vector<double>{0.5, 1.0, 0.75 * nd};
      return {make_weighted_sum(1.0, 1.0, make_power(-pick(rng, exps)), make_power(-pick(rng, exps))),
              convex ? Curvature::Convex : Curvature::Concave};
    }
  }
}

struct LinearChoice {
  LinearOrliczSpec spec;
  Curvature declared;
};

LinearChoice pick_linear(int n, Rng& rng) {
  const double nd = n;
  const double alpha = rng.uniform(0.5, 1.5);
  const double beta = rng.uniform(0.5, 1.5);
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      const std::vector<double> exps{0.5, 1.0, 2.0, 3.0};
      return {LinearOrliczSpec::make(alpha, beta, make_power(pick(rng, exps)),
                                     make_power(pick(rng, exps))),
              Curvature::Convex};
    }
    case 1: {
      const std::vector<double> exps{nd + 0.5, nd + 1.0, 2.0 * nd};
      return {LinearOrliczSpec::make(alpha, beta, make_power(-pick(rng, exps)),
                                     make_power(-pick(rng, exps))),
              Curvature::Convex};
    }
    default: {
      const std::vector<double> exps{0.5, 1.0, 0.75 * nd};
      return {LinearOrliczSpec::make(alpha, beta, make_power(-pick(rng, exps)),
                                     make_power(-pick(rng, exps))),
              Curvature::Concave};
    }
  }
}

// Functions of class Φ or Ψ, tagged accordingly.
OrliczUnivariate pick_classified(int n, Rng& rng) {
  const double nd = n;
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return make_power(pick(rng, std::vector<double>{0.5, 1.0, 2.0, 3.0, -(nd + 1.0), -2.0 * nd}))
          .with_tag(UnivariateClass::Phi);
    case 1:
      return make_power(pick(rng, std::vector<double>{-0.5 * nd, -0.25 * nd, -0.75 * nd}))
          .with_tag(UnivariateClass::Psi);
    case 2:
      return make_arctan_inverse_power(nd).with_tag(UnivariateClass::Psi);
    default:
      return make_log1p_inverse_power(nd).with_tag(UnivariateClass::Psi);
  }
}

struct Pair {
  StarBody K;
  StarBody L;
  InstanceKind kind;
  std::optional<double> lambda;
  double eccentricity;
};

Pair make_pair(int n, int trial, Rng& rng, bool single_body) {
  switch (trial % 3) {
    case 0: {
      const double lambda = rng.log_uniform(0.5, 2.0);
      if (single_body) {
        // K = λB, compared against the unit ball.
        const auto K = ball(n, lambda);
        return {K, K, InstanceKind::Dilate, lambda, kNaN};
      }
      const auto K = random_body(n, rng);
      return {K, dilate(lambda, K), InstanceKind::Dilate, lambda, kNaN};
    }
    case 1: {
      const double ratio = rng.uniform(2.0, 3.0);
      const auto K = eccentric_ellipsoid(n, ratio, rng);
      return {K, ball(n, rng.log_uniform(0.7, 1.4)), InstanceKind::Eccentric, std::nullopt, ratio};
    }
    default: {
      const auto K = random_body(n, rng);
      return {K, random_body(n, rng), InstanceKind::General, std::nullopt, kNaN};
    }
  }
}

QuadratureRule suite_rule(int n, std::size_t size, std::uint64_t seed) {
  return make_rule(n, size, 0, seed);
}

}  // namespace

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Dilate:
      return "dilate";
    case InstanceKind::Eccentric:
      return "eccentric";
    case InstanceKind::General:
      return "general";
  }
  return "?";
}

Eigen::MatrixXd random_rotation(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

StarBody random_body(int n, Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      Eigen::VectorXd inv_sq(n);
      for (int i = 0; i < n; ++i) {
        const double a = rng.log_uniform(0.6, 1.6);
        inv_sq(i) = 1.0 / (a * a);
      }
      const Eigen::MatrixXd R = random_rotation(n, rng);
      Eigen::MatrixXd A = R * inv_sq.asDiagonal() * R.transpose();
      A = 0.5 * (A + A.transpose());
      return ellipsoid_matrix(A);
    }
    case 1:
      return lp_ball(n, rng.uniform(1.5, 5.0), rng.log_uniform(0.7, 1.4));
    default: {
      for (;;) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) T(i, j) += 0.3 * rng.normal();
        }
        if (std::abs(T.determinant()) < 0.3) continue;
        return apply_linear(LinearMap(T), lp_ball(n, rng.uniform(1.5, 5.0)));
      }
    }
  }
}

StarBody eccentric_ellipsoid(int n, double ratio, Rng& rng) {
  if (!(ratio >= 1.0)) throw InvalidArgument("axis ratio must be at least 1");
  const double scale = rng.log_uniform(0.7, 1.4);
  Eigen::VectorXd inv_sq = Eigen::VectorXd::Constant(n, 1.0 / (scale * scale));
  inv_sq(0) = 1.0 / (ratio * ratio * scale * scale);
  const Eigen::MatrixXd R = random_rotation(n, rng);
  Eigen::MatrixXd A = R * inv_sq.asDiagonal() * R.transpose();
  A = 0.5 * (A + A.transpose());
  return ellipsoid_matrix(A);
}

LinearMap random_unimodular(int n, Rng& rng) {
  for (;;) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) T(i, j) += 0.5 * rng.normal();
    }
    const double det = T.determinant();
    if (std::abs(det) < 0.2) continue;
    T /= std::pow(std::abs(det), 1.0 / n);
    if (det < 0.0) T.row(0) *= -1.0;
    LinearMap map(T);
    if (std::abs(map.determinant_abs() - 1.0) <= 1e-12) return map;
  }
}

std::vector<SuiteCase> run_suite(TheoremId id, const SuiteOptions& options) {
  const int n = options.n;
  const QuadratureRule rule = suite_rule(n, options.rule_size, options.seed);
  Rng rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(id) * 7919ULL + 17ULL);
  const bool single = id == TheoremId::Isoperimetric || id == TheoremId::Urysohn;

  std::vector<SuiteCase> out;
  out.reserve(static_cast<std::size_t>(options.trials));
  for (int trial = 0; trial < options.trials; ++trial) {
    Pair pair = make_pair(n, trial, rng, single);
    SuiteCase c;
    c.kind = pair.kind;
    c.expected_lambda = pair.lambda;
    c.eccentricity = pair.eccentricity;
    switch (id) {
      case TheoremId::DualOBM: {
        auto choice = pick_bivariate(n, rng);
        c.functions = choice.phi.name();
        c.report = verify_dual_obm(choice.phi, pair.K, pair.L, rule, choice.declared, options.verify);
        break;
      }
      case TheoremId::LinearDualOBM: {
        auto choice = pick_linear(n, rng);
        c.functions = choice.spec.phi1.name() + ", " + choice.spec.phi2.name();
        c.report = verify_linear_dual_obm(choice.spec, pair.K, pair.L, rule, choice.declared,
                                          options.verify);
        break;
      }
      case TheoremId::DualMinkowski: {
        auto phi = pick_classified(n, rng);
        c.functions = phi.name();
        c.report = verify_dual_minkowski(phi, pair.K, pair.L, rule, options.verify);
        break;
      }
      case TheoremId::Isoperimetric: {
        auto phi = pick_classified(n, rng);
        c.functions = phi.name();
        c.report = verify_isoperimetric(phi, pair.K, rule, options.verify);
        break;
      }
      case TheoremId::Urysohn: {
        auto phi = pick_classified(n, rng);
        c.functions = phi.name();
        c.report = verify_urysohn(phi, pair.K, rule, options.verify);
        break;
      }
      case TheoremId::Comparison: {
        const std::vector<double> exps{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0};
        const double a = pick(rng, exps);
        const double b = pick(rng, exps);
        const double ratio = a / b;
        const Curvature declared =
            (ratio >= 1.0 || ratio < 0.0) ? Curvature::Convex : Curvature::Concave;
        const auto phi = make_power(a);
        const auto psi = make_power(b);
        c.functions = phi.name() + ", " + psi.name();
        c.report = verify_comparison(phi, psi, pair.K, pair.L, rule, declared, options.verify);
        break;
      }
      case TheoremId::SLInvariance: {
        const auto phi = make_power(pick(rng, std::vector<double>{-2.0, -1.0, 1.0, 2.0}));
        const auto T = random_unimodular(n, rng);
        c.functions = phi.name();
        c.report = verify_sl_invariance(phi, pair.K, pair.L, T, rule, options.verify);
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TheoremId> parse_suite(const std::string& spec) {
  if (spec == "all") return all_theorems();
  std::vector<TheoremId> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(theorem_from_string(item));
  }
  if (out.empty()) throw InvalidArgument("empty suite specification");
  return out;
}

std::vector<LpSplitCase> run_lp_split(int n, double p, int trials, std::uint64_t seed,
                                      std::size_t rule_size) {
  if (p == 0.0) throw InvalidArgument("p must be nonzero");
  const QuadratureRule rule = suite_rule(n, rule_size, seed);
  const auto phi = make_power_sum(p, 2, PowerForm::Decreasing);
  const Relation expected =
      (p > 0.0 && p <= n) ? Relation::LessEqual : Relation::GreaterEqual;
  Rng rng(seed * 31ULL + static_cast<std::uint64_t>(std::abs(p) * 1000.0) + (p < 0 ? 7ULL : 0ULL));
  const double e = p / n;

  std::vector<LpSplitCase> out;
  for (int t = 0; t < trials; ++t) {
    const auto K = random_body(n, rng);
    const auto L = random_body(n, rng);
    const auto vs = volume(orlicz_radial_sum(phi, K, L), rule);
    const auto vk = volume(K, rule);
    const auto vl = volume(L, rule);
    LpSplitCase c;
    c.p = p;
    c.expected = expected;
    c.lhs = std::pow(vs.value, e);
    c.rhs = std::pow(vk.value, e) + std::pow(vl.value, e);
    const double lhs_err = std::abs(e) * std::pow(vs.value, e - 1.0) * vs.error_estimate;
    const double rhs_err = std::abs(e) * (std::pow(vk.value, e - 1.0) * vk.error_estimate +
                                          std::pow(vl.value, e - 1.0) * vl.error_estimate);
    c.margin = margin_of(c.lhs, c.rhs, expected);
    c.tolerance = std::max(1e-9 * std::abs(c.rhs), 10.0 * (lhs_err + rhs_err));
    c.verdict = verdict_of(c.margin, c.tolerance);
    out.push_back(c);
  }
  return out;
}

std::vector<SweepRow> run_sweep(TheoremId id, int n, const std::vector<double>& eccentricities,
                                const QuadratureRule& rule, const VerifyOptions& options) {
  std::vector<SweepRow> rows;
  const auto B = ball(n, 1.0);
  const auto t1 = make_power(1.0);
  for (double e : eccentricities) {
    std::vector<double> axes(static_cast<std::size_t>(n), 1.0);
    axes[0] = e;
    const auto K = ellipsoid_axes(axes);
    VerificationReport r;
    switch (id) {
      case TheoremId::DualOBM:
        r = verify_dual_obm(make_power_sum(n + 1.0, 2, PowerForm::Decreasing), K, B, rule,
                            Curvature::Convex, options);
        break;
      case TheoremId::LinearDualOBM:
        r = verify_linear_dual_obm(LinearOrliczSpec::make(1.0, 1.0, t1, t1), K, B, rule,
                                   Curvature::Convex, options);
        break;
      case TheoremId::DualMinkowski:
        r = verify_dual_minkowski(t1.with_tag(UnivariateClass::Phi), K, B, rule, options);
        break;
      case TheoremId::Isoperimetric:
        r = verify_isoperimetric(t1.with_tag(UnivariateClass::Phi), K, rule, options);
        break;
      case TheoremId::Urysohn:
        r = verify_urysohn(t1.with_tag(UnivariateClass::Phi), K, rule, options);
        break;
      case TheoremId::Comparison:
        r = verify_comparison(make_power(2.0), t1, K, B, rule, Curvature::Convex, options);
        break;
      case TheoremId::SLInvariance: {
        Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
        T(0, 0) = 2.0;
        T(1, 1) = 0.5;
        r = verify_sl_invariance(t1, K, B, LinearMap(T), rule, options);
        break;
      }
    }
    rows.push_back({id, e, std::move(r)});
  }
  return rows;
}

}  // namespace starorlicz
