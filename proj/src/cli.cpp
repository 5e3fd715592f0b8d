#include "starorlicz/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "starorlicz/dual_functionals.hpp"
#include "starorlicz/errors.hpp"
#include "starorlicz/inequality_lab.hpp"
#include "starorlicz/serialization.hpp"
#include "starorlicz/suites.hpp"

namespace starorlicz::cli {
namespace {

struct Config {
  int n = 2;
  std::string rule = "auto";
  std::size_t N = 0;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::optional<double> error_factor;
  std::string out;
  std::string csv;
  std::string suite;
  std::string theorem;
  std::string declared;
  int trials = 200;
  std::string phi, psi, phi1, phi2, K, L, T;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> eps;
  std::vector<double> ecc{1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path", inline JSON, an existing file, or a bare string (function shorthand).
Json load_spec(const std::string& arg, const std::string& flag) {
  if (arg.empty()) throw SpecError("missing required " + flag);
  if (arg[0] == '@') {
    const std::string path = arg.substr(1);
    return parse_json_text(read_file(path), path);
  }
  const char c = arg.find_first_not_of(" \t\r\n") == std::string::npos
                     ? ' '
                     : arg[arg.find_first_not_of(" \t\r\n")];
  if (c == '{' || c == '[' || c == '"') return parse_json_text(arg, flag);
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_json_text(read_file(arg), arg);
  return Json(arg);
}

StarBody load_body(const std::string& arg, const std::string& flag, int n) {
  const Json j = load_spec(arg, flag);
  if (j.is_string()) throw SpecError(flag + ": cannot read body file '" + arg + "'");
  StarBody K = [&] {
    try {
      return body_from_json(j, n);
    } catch (const SpecError& e) {
      throw SpecError(flag + ": " + e.what());
    }
  }();
  if (K.dimension() != n) {
    throw SpecError(flag + ": body has dimension " + std::to_string(K.dimension()) +
                    " but --n is " + std::to_string(n));
  }
  return K;
}

OrliczUnivariate load_univariate(const std::string& arg, const std::string& flag) {
  const Json j = load_spec(arg, flag);
  try {
    return univariate_from_json(j);
  } catch (const SpecError& e) {
    throw SpecError(flag + ": " + e.what());
  }
}

OrliczBivariate load_bivariate(const std::string& arg, const std::string& flag) {
  const Json j = load_spec(arg, flag);
  try {
    return bivariate_from_json(j);
  } catch (const SpecError& e) {
    throw SpecError(flag + ": " + e.what());
  }
}

QuadratureRule build_rule(const Config& c) {
  if (c.rule == "auto") return make_rule(c.n, c.N, 0, c.seed);
  if (c.rule == "circle_trapezoid") {
    if (c.n != 2) throw InvalidArgument("circle_trapezoid requires --n 2");
    return circle_trapezoid(c.N == 0 ? 2048 : c.N);
  }
  if (c.rule == "sphere_product_gauss") {
    if (c.n != 3) throw InvalidArgument("sphere_product_gauss requires --n 3");
    const std::size_t nt = c.N == 0 ? 64 : c.N;
    return sphere_product_gauss(nt, 2 * nt);
  }
  if (c.rule == "monte_carlo") return monte_carlo(c.n, c.N == 0 ? 200000 : c.N, c.seed);
  throw InvalidArgument("unknown rule '" + c.rule + "'");
}

VerifyOptions verify_options(const Config& c) {
  VerifyOptions v;
  v.seed = c.seed;
  if (c.tol) v.relative_floor = *c.tol;
  if (c.error_factor) v.error_factor = *c.error_factor;
  return v;
}

Json with_header(Json j, const std::string& command) {
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json value_document(const FunctionalValue& v, const std::string& command) {
  return with_header(to_json(v), command);
}

Curvature declared_curvature(const Config& c) {
  if (c.declared.empty()) throw SpecError("--declared is required for this theorem");
  return curvature_from_string(c.declared);
}

VerificationReport verify_single(const Config& c, const QuadratureRule& rule) {
  const auto options = verify_options(c);
  switch (theorem_from_string(c.theorem)) {
    case TheoremId::DualOBM:
      return verify_dual_obm(load_bivariate(c.phi, "--phi"), load_body(c.K, "--K", c.n),
                             load_body(c.L, "--L", c.n), rule, declared_curvature(c), options);
    case TheoremId::LinearDualOBM: {
      const auto spec = LinearOrliczSpec::make(c.alpha, c.beta, load_univariate(c.phi1, "--phi1"),
                                               load_univariate(c.phi2, "--phi2"));
      return verify_linear_dual_obm(spec, load_body(c.K, "--K", c.n), load_body(c.L, "--L", c.n),
                                    rule, declared_curvature(c), options);
    }
    case TheoremId::DualMinkowski:
      return verify_dual_minkowski(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n),
                                   load_body(c.L, "--L", c.n), rule, options);
    case TheoremId::Isoperimetric:
      return verify_isoperimetric(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n),
                                  rule, options);
    case TheoremId::Urysohn:
      return verify_urysohn(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n), rule,
                            options);
    case TheoremId::Comparison:
      return verify_comparison(load_univariate(c.phi, "--phi"), load_univariate(c.psi, "--psi"),
                               load_body(c.K, "--K", c.n), load_body(c.L, "--L", c.n), rule,
                               declared_curvature(c), options);
    case TheoremId::SLInvariance: {
      const Json t = load_spec(c.T, "--T");
      std::vector<std::vector<double>> rows;
      try {
        rows = t.get<std::vector<std::vector<double>>>();
      } catch (const Json::exception&) {
        throw SpecError("--T: expected a matrix given as an array of rows");
      }
      return verify_sl_invariance(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n),
                                  load_body(c.L, "--L", c.n), LinearMap::from_rows(rows), rule,
                                  options);
    }
  }
  throw InvalidArgument("unknown theorem");
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw SpecError("cannot write '" + c.out + "'");
  file << text;
}

void write_csv_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw SpecError("cannot write '" + path + "'");
  file << text;
}

int cmd_add(const Config& c, std::ostream& out) {
  const auto rule = build_rule(c);
  const auto K = load_body(c.K, "--K", c.n);
  const auto L = load_body(c.L, "--L", c.n);
  StarBody S = K;
  double tau = 0.0;
  if (!c.phi1.empty() || !c.phi2.empty()) {
    const auto spec = LinearOrliczSpec::make(c.alpha, c.beta, load_univariate(c.phi1, "--phi1"),
                                             load_univariate(c.phi2, "--phi2"));
    S = linear_orlicz_sum(spec, K, L);
    tau = spec.tau();
  } else {
    const auto phi = load_bivariate(c.phi, "--phi");
    S = orlicz_radial_sum(phi, K, L);
    tau = solve_tau(phi);
  }
  Json samples = Json::array();
  const auto dirs = direction_grid(c.n, 16, c.seed);
  const auto rho = S.radii(dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto comp = dirs[i].components();
    samples.push_back(Json{{"u", std::vector<double>(comp.begin(), comp.end())}, {"rho", rho[i]}});
  }
  Json doc{{"body", to_json(S)}, {"tau", tau}, {"volume", to_json(volume(S, rule))},
           {"samples", samples}};
  emit(c, dump(with_header(doc, "add")), out);
  return kExitOk;
}

int cmd_variation(const Config& c, std::ostream& out) {
  const auto rule = build_rule(c);
  const auto phi1 = load_univariate(c.phi1, "--phi1");
  const auto phi2 = load_univariate(c.phi2, "--phi2");
  const auto K = load_body(c.K, "--K", c.n);
  const auto L = load_body(c.L, "--L", c.n);
  const auto est = c.eps.empty() ? first_variation(phi1, phi2, K, L, rule)
                                 : first_variation(phi1, phi2, K, L, rule, c.eps);
  emit(c, dump(with_header(to_json(est), "variation")), out);
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  Json arr = Json::array();
  std::vector<VerificationReport> reports;
  if (!c.suite.empty()) {
    SuiteOptions options;
    options.n = c.n;
    options.seed = c.seed;
    options.trials = c.trials;
    options.rule_size = c.N;
    options.verify = verify_options(c);
    for (TheoremId id : parse_suite(c.suite)) {
      for (const auto& sc : run_suite(id, options)) {
        arr.push_back(to_json(sc));
        reports.push_back(sc.report);
      }
    }
  } else {
    if (c.theorem.empty()) throw SpecError("verify needs --suite or --theorem");
    const auto report = verify_single(c, build_rule(c));
    arr.push_back(to_json(report));
    reports.push_back(report);
  }
  emit(c, dump(arr), out);
  if (!c.csv.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, reports);
    write_csv_file(c.csv, csv.str());
  }
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Violated) return kExitViolated;
  }
  return kExitOk;
}

int cmd_sweep(const Config& c, std::ostream& out) {
  const auto rule = build_rule(c);
  std::vector<TheoremId> ids;
  if (!c.theorem.empty()) {
    ids.push_back(theorem_from_string(c.theorem));
  } else {
    ids = parse_suite(c.suite.empty() ? "all" : c.suite);
  }
  std::vector<SweepRow> rows;
  for (TheoremId id : ids) {
    auto part = run_sweep(id, c.n, c.ecc, rule, verify_options(c));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(c, csv.str(), out);
  for (const auto& row : rows) {
    if (row.report.verdict == Verdict::Violated) return kExitViolated;
  }
  return kExitOk;
}

Json error_json(const char* kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Dual Orlicz-Brunn-Minkowski calculus for star bodies", "star_orlicz"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--n", c.n, "dimension")->check(CLI::Range(2, 64));
  app.add_option("--rule", c.rule, "auto, circle_trapezoid, sphere_product_gauss, monte_carlo");
  app.add_option("--N", c.N, "rule resolution (N, N_theta or sample count)");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tol", c.tol, "relative tolerance floor");
  app.add_option("--error-factor", c.error_factor, "multiplier on quadrature error estimates");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--csv", c.csv, "margin table path (verify)");
  app.add_option("--suite", c.suite, "'all' or comma separated theorem names");
  app.add_option("--theorem", c.theorem, "single theorem to verify or sweep");
  app.add_option("--declared", c.declared, "declared curvature: convex or concave");
  app.add_option("--trials", c.trials, "randomized instances per theorem")->check(CLI::PositiveNumber);
  app.add_option("--phi", c.phi, "Orlicz function (inline JSON or @file)");
  app.add_option("--psi", c.psi, "second univariate function (comparison)");
  app.add_option("--phi1", c.phi1, "first univariate function");
  app.add_option("--phi2", c.phi2, "second univariate function");
  app.add_option("--alpha", c.alpha, "weight of phi1");
  app.add_option("--beta", c.beta, "weight of phi2");
  app.add_option("--K", c.K, "first body (@file or inline JSON)");
  app.add_option("--L", c.L, "second body (@file or inline JSON)");
  app.add_option("--T", c.T, "matrix for SL invariance, array of rows");
  app.add_option("--eps", c.eps, "step sizes for the first variation")->delimiter(',');
  app.add_option("--ecc", c.ecc, "axis ratios for sweep")->delimiter(',');

  auto* add = app.add_subcommand("add", "Orlicz radial sum of --K and --L");
  auto* vol = app.add_subcommand("volume", "volume of --K");
  auto* mixed = app.add_subcommand("mixedvol", "dual Orlicz mixed volume of --K and --L");
  auto* surface = app.add_subcommand("surface", "dual Orlicz surface area of --K");
  auto* mean = app.add_subcommand("meanradius", "harmonic Orlicz mean radius of --K");
  auto* variation = app.add_subcommand("variation", "first variation of the volume");
  auto* verify = app.add_subcommand("verify", "verify inequalities");
  auto* sweep = app.add_subcommand("sweep", "margin against eccentricity as CSV");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("star_orlicz");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (add->parsed()) return cmd_add(c, out);
    if (vol->parsed()) {
      emit(c, dump(value_document(volume(load_body(c.K, "--K", c.n), build_rule(c)), "volume")),
           out);
      return kExitOk;
    }
    if (mixed->parsed()) {
      const auto rule = build_rule(c);
      const auto v = dual_mixed_volume(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n),
                                       load_body(c.L, "--L", c.n), rule);
      emit(c, dump(value_document(v, "mixedvol")), out);
      return kExitOk;
    }
    if (surface->parsed()) {
      const auto rule = build_rule(c);
      const auto v =
          dual_surface_area(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n), rule);
      emit(c, dump(value_document(v, "surface")), out);
      return kExitOk;
    }
    if (mean->parsed()) {
      const auto rule = build_rule(c);
      const auto v =
          harmonic_mean_radius(load_univariate(c.phi, "--phi"), load_body(c.K, "--K", c.n), rule);
      emit(c, dump(value_document(v, "meanradius")), out);
      return kExitOk;
    }
    if (variation->parsed()) return cmd_variation(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (sweep->parsed()) return cmd_sweep(c, out);
  } catch (const SolverError& e) {
    Json j = error_json("solver", e.what());
    Json trace = Json::array();
    for (const auto& s : e.trace()) {
      trace.push_back(Json{{"lo", s.lo}, {"hi", s.hi}, {"g_lo", s.g_lo}, {"g_hi", s.g_hi}});
    }
    j["trace"] = trace;
    err << dump(j);
    return kExitError;
  } catch (const SpecError& e) {
    err << dump(error_json("spec", e.what()));
    return kExitError;
  } catch (const DeclarationError& e) {
    err << dump(error_json("declaration", e.what()));
    return kExitError;
  } catch (const EvaluationError& e) {
    err << dump(error_json("evaluation", e.what()));
    return kExitError;
  } catch (const InvalidArgument& e) {
    err << dump(error_json("invalid_argument", e.what()));
    return kExitError;
  } catch (const Error& e) {
    err << dump(error_json("error", e.what()));
    return kExitError;
  }
  return kExitError;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    return run(args, out, err);
  } catch (const std::exception& e) {
    err << dump(error_json("internal", e.what()));
    return kExitError;
  }
}

}  // namespace starorlicz::cli
