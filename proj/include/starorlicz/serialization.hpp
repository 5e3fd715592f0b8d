#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "starorlicz/dual_functionals.hpp"
#include "starorlicz/errors.hpp"
#include "starorlicz/inequality_lab.hpp"
#include "starorlicz/suites.hpp"

namespace starorlicz {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Malformed JSON text or an invalid field. The message carries the line and
// column for syntax errors and the field path (e.g. "$.child.r") otherwise.
class SpecError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

Json parse_json_text(const std::string& text, const std::string& source = "<inline>");

// ---- functions ---------------------------------------------------------------
//
// Univariate: {"kind":"power","p":1}, {"kind":"constant","c":1},
// {"kind":"arctan_inverse_power","k":2}, {"kind":"log1p_inverse_power","k":2},
// each with an optional "class" override ("Phi", "Psi", ...). The shorthand
// strings "power<p>", "arctan<k>" and "log1p<k>" are accepted as well.
//
// Bivariate: {"kind":"power_sum","p":2,"sign":"decreasing","m":2},
// {"kind":"weighted_sum","alpha":1,"beta":1,"phi1":{...},"phi2":{...}},
// {"kind":"tilde","of":{...}}.

OrliczUnivariate univariate_from_json(const Json& j, const std::string& path = "$");
OrliczBivariate bivariate_from_json(const Json& j, const std::string& path = "$");
Json to_json(const OrliczUnivariate& phi);
Json to_json(const OrliczBivariate& phi);

// ---- bodies ------------------------------------------------------------------
//
// {"kind":"ball","r":1}, {"kind":"ellipsoid","axes":[...]} or {"matrix":[[...]]},
// {"kind":"lp_ball","q":2,"scale":1}, {"kind":"dilate","lambda":2,"child":{...}},
// {"kind":"linear_image","matrix":[[...]],"child":{...}},
// {"kind":"intersect"|"union","children":[...]},
// {"kind":"orlicz_sum","phi":{...},"children":[...]},
// {"kind":"linear_orlicz_sum","alpha":1,"beta":1,"phi1":{...},"phi2":{...},"K":{...},"L":{...}}.
// Balls and l_q balls take their dimension from "n" or from `default_n`.

StarBody body_from_json(const Json& j, int default_n, const std::string& path = "$");
Json to_json(const StarBody& K);

// ---- results -----------------------------------------------------------------

Json to_json(const RuleDescriptor& rule);
Json to_json(const FunctionalValue& value);
Json to_json(const DerivativeEstimate& d);
Json to_json(const VariationEstimate& estimate);
Json to_json(const DilateDiagnosis& d);
Json to_json(const VerificationReport& report);
Json to_json(const SuiteCase& c);

// Deterministic text: sorted keys, two-space indent, doubles with 17
// significant digits, non-finite doubles as null.
std::string dump(const Json& j);

// ---- CSV ---------------------------------------------------------------------

// theorem_id,lhs,rhs,margin,tolerance,verdict,lambda_estimate
void write_report_csv(std::ostream& out, const std::vector<VerificationReport>& reports);
// theorem_id,eccentricity,lhs,rhs,margin,tolerance,verdict,lambda_estimate
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

std::string format_double(double x);

}  // namespace starorlicz
