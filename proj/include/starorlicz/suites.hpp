#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starorlicz/inequality_lab.hpp"
#include "starorlicz/random.hpp"

namespace starorlicz {

enum class InstanceKind { Dilate, Eccentric, General };
const char* to_string(InstanceKind kind);

struct SuiteCase {
  VerificationReport report;
  InstanceKind kind = InstanceKind::General;
  std::optional<double> expected_lambda;  // set for constructed dilates
  double eccentricity = 0.0;              // axis ratio for eccentric ellipsoids, else NaN
  std::string functions;                  // names of the Orlicz functions used
};

struct SuiteOptions {
  int n = 2;
  std::uint64_t seed = 42;
  int trials = 200;
  std::size_t rule_size = 0;  // 0 selects the default resolution
  VerifyOptions verify;
};

// Random star bodies: rotated ellipsoids, l_q balls and linear images of l_q balls.
StarBody random_body(int n, Rng& rng);
// Ellipsoid with axis ratio `ratio` (≥ 1) and a random orientation.
StarBody eccentric_ellipsoid(int n, double ratio, Rng& rng);
Eigen::MatrixXd random_rotation(int n, Rng& rng);
// Random T with |det T| = 1 and moderate condition number.
LinearMap random_unimodular(int n, Rng& rng);

// Randomized instances of one theorem cycling through dilate, eccentric and
// general pairs. Declarations are derived from the known classification of
// each function family and are cross-checked by the probes.
std::vector<SuiteCase> run_suite(TheoremId id, const SuiteOptions& options);

// "all" or a comma separated list of theorem names.
std::vector<TheoremId> parse_suite(const std::string& spec);

// The L_p dual Brunn-Minkowski split for φ = x^{-p} + y^{-p}:
// |K +̃_{-p} L|^{p/n} ≤ |K|^{p/n} + |L|^{p/n} for p ∈ (0, n], ≥ otherwise.
struct LpSplitCase {
  double p = 0.0;
  Relation expected = Relation::LessEqual;
  double lhs = 0.0;  // |K +̃_{-p} L|^{p/n}
  double rhs = 0.0;  // |K|^{p/n} + |L|^{p/n}
  double margin = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Holds;
};

std::vector<LpSplitCase> run_lp_split(int n, double p, int trials, std::uint64_t seed,
                                      std::size_t rule_size = 0);

struct SweepRow {
  TheoremId theorem;
  double eccentricity;
  VerificationReport report;
};

// Margins against axis ratio for K = ellipsoid(e, 1, …, 1), L = B.
std::vector<SweepRow> run_sweep(TheoremId id, int n, const std::vector<double>& eccentricities,
                                const QuadratureRule& rule, const VerifyOptions& options = {});

}  // namespace starorlicz
