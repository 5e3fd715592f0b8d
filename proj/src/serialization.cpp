#include "starorlicz/serialization.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "starorlicz/errors.hpp"

namespace starorlicz {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw SpecError("field '" + path + "': " + message);
}

std::string type_name(const Json& j) { return j.type_name(); }

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object, found " + type_name(j));
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number, found " + type_name(j));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double number(const Json& j, const std::string& key, const std::string& path) {
  return as_number(field(j, key, path), path + "." + key);
}

double number_or(const Json& j, const std::string& key, const std::string& path, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, path + "." + key);
}

int integer_or(const Json& j, const std::string& key, const std::string& path, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) fail(path + "." + key, "expected an integer");
  return it->get<int>();
}

std::string string_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string, found " + type_name(v));
  return v.get<std::string>();
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::MatrixXd matrix_field(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    const auto row = number_array(j[static_cast<std::size_t>(i)], rp);
    if (static_cast<Eigen::Index>(row.size()) != rows) fail(rp, "matrix must be square");
    for (Eigen::Index k = 0; k < rows; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

UnivariateClass class_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a class name");
  const std::string s = lower(j.get<std::string>());
  if (s == "phi") return UnivariateClass::Phi;
  if (s == "psi") return UnivariateClass::Psi;
  if (s == "phitilde1") return UnivariateClass::PhiTilde1;
  if (s == "psitilde1") return UnivariateClass::PsiTilde1;
  if (s == "unclassified") return UnivariateClass::Unclassified;
  fail(path, "unknown class '" + j.get<std::string>() + "'");
}

OrliczUnivariate univariate_shorthand(const std::string& s, const std::string& path) {
  for (const char* prefix : {"power", "arctan", "log1p"}) {
    const std::string pre = prefix;
    if (s.rfind(pre, 0) != 0 || s.size() == pre.size()) continue;
    const std::string rest = s.substr(pre.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != rest.size()) break;
    if (pre == "power") return make_power(v);
    if (pre == "arctan") return make_arctan_inverse_power(v);
    return make_log1p_inverse_power(v);
  }
  fail(path, "unknown function shorthand '" + s + "'");
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SpecError&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
}

std::vector<StarBody> children_from_json(const Json& j, int default_n, const std::string& path) {
  const Json& arr = field(j, "children", path);
  if (!arr.is_array() || arr.empty()) fail(path + ".children", "expected a non-empty array");
  std::vector<StarBody> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(body_from_json(arr[i], default_n, path + ".children[" + std::to_string(i) + "]"));
  }
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

void write_json(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += inner;
        write_json(out, j[i], indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += inner + Json(it.key()).dump() + ": ";
        write_json(out, it.value(), indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_lambda(const VerificationReport& r) {
  if (r.equality_diagnosis && r.equality_diagnosis->dilates) {
    return format_double(r.equality_diagnosis->lambda);
  }
  return "";
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SpecError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                    ": malformed JSON: " + e.what());
  }
}

OrliczUnivariate univariate_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    return rethrow_at(path, [&] { return univariate_shorthand(j.get<std::string>(), path); });
  }
  const std::string kind = string_field(j, "kind", path);
  OrliczUnivariate phi = rethrow_at(path, [&]() -> OrliczUnivariate {
    if (kind == "power") return make_power(number(j, "p", path));
    if (kind == "constant") return make_constant(number(j, "c", path));
    if (kind == "arctan_inverse_power") return make_arctan_inverse_power(number(j, "k", path));
    if (kind == "log1p_inverse_power") return make_log1p_inverse_power(number(j, "k", path));
    fail(path + ".kind", "unknown univariate kind '" + kind + "'");
  });
  if (auto it = j.find("class"); it != j.end()) {
    phi = phi.with_tag(class_from_json(*it, path + ".class"));
  }
  return phi;
}

OrliczBivariate bivariate_from_json(const Json& j, const std::string& path) {
  const std::string kind = string_field(j, "kind", path);
  return rethrow_at(path, [&]() -> OrliczBivariate {
    if (kind == "power_sum") {
      const std::string sign = lower(string_field(j, "sign", path));
      PowerForm form;
      if (sign == "increasing") {
        form = PowerForm::Increasing;
      } else if (sign == "decreasing") {
        form = PowerForm::Decreasing;
      } else {
        fail(path + ".sign", "expected 'increasing' or 'decreasing'");
      }
      return make_power_sum(number(j, "p", path), integer_or(j, "m", path, 2), form);
    }
    if (kind == "weighted_sum") {
      return make_weighted_sum(number(j, "alpha", path), number(j, "beta", path),
                               univariate_from_json(field(j, "phi1", path), path + ".phi1"),
                               univariate_from_json(field(j, "phi2", path), path + ".phi2"));
    }
    if (kind == "tilde") return tilde(bivariate_from_json(field(j, "of", path), path + ".of"));
    fail(path + ".kind", "unknown bivariate kind '" + kind + "'");
  });
}

Json to_json(const OrliczUnivariate& phi) {
  Json j = std::visit(
      Overloaded{
          [](const descriptor::Power& d) { return Json{{"kind", "power"}, {"p", d.p}}; },
          [](const descriptor::Constant& d) { return Json{{"kind", "constant"}, {"c", d.c}}; },
          [](const descriptor::ArctanInversePower& d) {
            return Json{{"kind", "arctan_inverse_power"}, {"k", d.k}};
          },
          [](const descriptor::Log1pInversePower& d) {
            return Json{{"kind", "log1p_inverse_power"}, {"k", d.k}};
          },
          [](const descriptor::CustomUnivariate& d) {
            return Json{{"kind", "custom"}, {"name", d.name}};
          },
      },
      phi.descriptor());
  j["class"] = to_string(phi.tag());
  return j;
}

Json to_json(const OrliczBivariate& phi) {
  return std::visit(
      Overloaded{
          [](const descriptor::PowerSum& d) {
            return Json{{"kind", "power_sum"},
                        {"p", d.p},
                        {"sign", d.form == PowerForm::Increasing ? "increasing" : "decreasing"},
                        {"m", d.m}};
          },
          [](const descriptor::WeightedSum& d) {
            return Json{{"kind", "weighted_sum"},
                        {"alpha", d.alpha},
                        {"beta", d.beta},
                        {"phi1", to_json(*d.phi1)},
                        {"phi2", to_json(*d.phi2)}};
          },
          [](const descriptor::Tilde& d) { return Json{{"kind", "tilde"}, {"of", to_json(*d.source)}}; },
          [](const descriptor::CustomBivariate& d) {
            return Json{{"kind", "custom"}, {"name", d.name}};
          },
      },
      phi.descriptor());
}

StarBody body_from_json(const Json& j, int default_n, const std::string& path) {
  const std::string kind = string_field(j, "kind", path);
  const int n = integer_or(j, "n", path, default_n);
  if (n < 2) fail(path + ".n", "dimension must be at least 2");
  return rethrow_at(path, [&]() -> StarBody {
    if (kind == "ball") return ball(n, number_or(j, "r", path, 1.0));
    if (kind == "lp_ball") return lp_ball(n, number(j, "q", path), number_or(j, "scale", path, 1.0));
    if (kind == "ellipsoid") {
      if (j.contains("axes")) return ellipsoid_axes(number_array(j["axes"], path + ".axes"));
      return ellipsoid_matrix(matrix_field(field(j, "matrix", path), path + ".matrix"));
    }
    if (kind == "dilate") {
      return dilate(number(j, "lambda", path),
                    body_from_json(field(j, "child", path), n, path + ".child"));
    }
    if (kind == "linear_image") {
      return apply_linear(LinearMap(matrix_field(field(j, "matrix", path), path + ".matrix")),
                          body_from_json(field(j, "child", path), n, path + ".child"));
    }
    if (kind == "intersect") return intersect(children_from_json(j, n, path));
    if (kind == "union") return unite(children_from_json(j, n, path));
    if (kind == "orlicz_sum") {
      return orlicz_radial_sum(bivariate_from_json(field(j, "phi", path), path + ".phi"),
                               children_from_json(j, n, path));
    }
    if (kind == "linear_orlicz_sum") {
      const auto spec = LinearOrliczSpec::make(
          number(j, "alpha", path), number(j, "beta", path),
          univariate_from_json(field(j, "phi1", path), path + ".phi1"),
          univariate_from_json(field(j, "phi2", path), path + ".phi2"));
      return linear_orlicz_sum(spec, body_from_json(field(j, "K", path), n, path + ".K"),
                               body_from_json(field(j, "L", path), n, path + ".L"));
    }
    fail(path + ".kind", "unknown body kind '" + kind + "'");
  });
}

Json to_json(const StarBody& K) {
  const int n = K.dimension();
  auto list = [](const std::vector<StarBody>& children) {
    Json arr = Json::array();
    for (const auto& c : children) arr.push_back(to_json(c));
    return arr;
  };
  return std::visit(
      Overloaded{
          [&](const node::Ball& v) { return Json{{"kind", "ball"}, {"n", n}, {"r", v.r}}; },
          [&](const node::Ellipsoid& v) {
            return Json{{"kind", "ellipsoid"}, {"matrix", matrix_json(v.shape)}};
          },
          [&](const node::LpBall& v) {
            return Json{{"kind", "lp_ball"}, {"n", n}, {"q", v.q}, {"scale", v.scale}};
          },
          [&](const node::CustomRadial& v) {
            return Json{{"kind", "custom"}, {"n", n}, {"name", v.name}};
          },
          [&](const node::Dilate& v) {
            return Json{{"kind", "dilate"}, {"lambda", v.lambda}, {"child", to_json(v.child)}};
          },
          [&](const node::LinearImage& v) {
            return Json{{"kind", "linear_image"},
                        {"matrix", matrix_json(v.map.matrix())},
                        {"child", to_json(v.child)}};
          },
          [&](const node::Intersect& v) {
            return Json{{"kind", "intersect"}, {"children", list(v.children)}};
          },
          [&](const node::Union& v) {
            return Json{{"kind", "union"}, {"children", list(v.children)}};
          },
          [&](const node::OrliczSum& v) {
            return Json{{"kind", "orlicz_sum"}, {"phi", to_json(v.phi)}, {"children", list(v.children)}};
          },
          [&](const node::LinearOrliczSum& v) {
            return Json{{"kind", "linear_orlicz_sum"},
                        {"alpha", v.alpha},
                        {"beta", v.beta},
                        {"phi1", to_json(v.phi1)},
                        {"phi2", to_json(v.phi2)},
                        {"K", to_json(v.K)},
                        {"L", to_json(v.L)}};
          },
      },
      K.node().value);
}

Json to_json(const RuleDescriptor& rule) {
  Json j{{"rule", to_string(rule.kind)}, {"N", rule.N}};
  if (rule.kind == RuleKind::SphereProductGauss) {
    j["n_theta"] = rule.n_theta;
    j["n_phi"] = rule.n_phi;
  }
  if (rule.kind == RuleKind::MonteCarlo) j["seed"] = rule.seed;
  return j;
}

Json to_json(const FunctionalValue& value) {
  return Json{{"value", value.value},
              {"error_estimate", value.error_estimate},
              {"rule", to_json(value.rule)}};
}

Json to_json(const DerivativeEstimate& d) {
  return Json{{"value", d.value},
              {"error", d.error},
              {"analytic", d.analytic},
              {"side", d.side == Side::Left ? "left" : "right"}};
}

Json to_json(const VariationEstimate& e) {
  const double product = e.product();
  return Json{{"epsilons", e.epsilons},
              {"volumes", e.volumes},
              {"quotients", e.quotients},
              {"volume_K", e.volume_K},
              {"extrapolated_limit", e.extrapolated_limit},
              {"extrapolation_error", e.extrapolation_error},
              {"derivative", to_json(e.derivative)},
              {"product", product},
              {"target", to_json(e.target)},
              {"relative_difference", std::abs(product - e.target.value) / std::abs(e.target.value)},
              {"rule", to_json(e.rule)}};
}

Json to_json(const DilateDiagnosis& d) {
  return Json{{"dilates", d.dilates},
              {"lambda", d.lambda},
              {"max_relative_deviation", d.max_relative_deviation},
              {"grid_size", d.grid_size}};
}

Json to_json(const VerificationReport& r) {
  return Json{{"schema_version", kSchemaVersion},
              {"theorem", to_string(r.theorem)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"lhs_error", r.lhs_error},
              {"rhs_error", r.rhs_error},
              {"direction", to_string(r.direction)},
              {"margin", r.margin},
              {"tolerance", r.tolerance},
              {"verdict", to_string(r.verdict)},
              {"equality_diagnosis",
               r.equality_diagnosis ? to_json(*r.equality_diagnosis) : Json(nullptr)},
              {"strict_probe", r.strict_probe},
              {"probe_evidence", r.probe_evidence},
              {"rule", to_json(r.rule)}};
}

Json to_json(const SuiteCase& c) {
  Json j = to_json(c.report);
  j["instance"] = Json{{"kind", to_string(c.kind)},
                       {"functions", c.functions},
                       {"expected_lambda", c.expected_lambda ? Json(*c.expected_lambda) : Json(nullptr)},
                       {"eccentricity", c.eccentricity}};
  return j;
}

std::string dump(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  out += "\n";
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "theorem_id,lhs,rhs,margin,tolerance,verdict,lambda_estimate\n";
  for (const auto& r : reports) {
    out << to_string(r.theorem) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << format_double(r.margin) << ',' << format_double(r.tolerance) << ','
        << to_string(r.verdict) << ',' << csv_lambda(r) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "theorem_id,eccentricity,lhs,rhs,margin,tolerance,verdict,lambda_estimate\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << to_string(r.theorem) << ',' << format_double(row.eccentricity) << ','
        << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin)
        << ',' << format_double(r.tolerance) << ',' << to_string(r.verdict) << ','
        << csv_lambda(r) << '\n';
  }
}

}  // namespace starorlicz
