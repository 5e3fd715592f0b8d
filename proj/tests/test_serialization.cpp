#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "starorlicz/serialization.hpp"

using namespace starorlicz;

namespace {

void expect_same_radii(const StarBody& a, const StarBody& b) {
  ASSERT_EQ(a.dimension(), b.dimension());
  for (const auto& u : direction_grid(a.dimension(), 50)) EXPECT_EQ(a.radius(u), b.radius(u));
}

std::string message_of(const std::string& text, int n = 2) {
  try {
    body_from_json(parse_json_text(text), n);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Bodies, RoundTrip) {
  const auto phi = make_power_sum(2.0, 2, PowerForm::Decreasing);
  const auto K = apply_linear(LinearMap::from_rows({{2.0, 0.0}, {0.3, 0.5}}), lp_ball(2, 3.0, 1.2));
  const auto L = unite({ellipsoid_axes({1.5, 0.7}), dilate(0.8, ball(2))});
  const auto S = orlicz_radial_sum(phi, K, intersect({L, ball(2, 1.4)}));
  const Json j = to_json(S);
  const auto back = body_from_json(j, 2);
  expect_same_radii(S, back);
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(Bodies, LinearOrliczRoundTrip) {
  const auto spec = LinearOrliczSpec::make(0.5, 1.5, make_power(-1.0), make_power(-3.0));
  const auto S = linear_orlicz_sum(spec, ball(3, 1.1), ellipsoid_axes({1.0, 2.0, 0.5}));
  expect_same_radii(S, body_from_json(to_json(S), 3));
}

TEST(Bodies, SpecExample) {
  const auto K = body_from_json(
      parse_json_text(R"({"kind":"linear_image","matrix":[[2,0],[0,0.5]],"child":{"kind":"ball","r":1.0}})"),
      2);
  expect_same_radii(K, ellipsoid_axes({2.0, 0.5}));
}

TEST(Bodies, FieldDiagnostics) {
  EXPECT_NE(message_of(R"({"kind":"dilate","lambda":2,"child":{"kind":"ball","r":-1}})").find("$.child"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"kind":"dilate","child":{"kind":"ball"}})").find("$.lambda"), std::string::npos);
  EXPECT_NE(message_of(R"({"kind":"lp_ball","q":"two"})").find("$.q"), std::string::npos);
  EXPECT_NE(message_of(R"({"kind":"blob"})").find("$.kind"), std::string::npos);
  EXPECT_NE(message_of(R"({"kind":"linear_image","matrix":[[1,0],[0]],"child":{"kind":"ball"}})")
                .find("$.matrix[1]"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"kind":"ball","n":1})").find("$.n"), std::string::npos);
}

TEST(Parse, LineAndColumn) {
  try {
    parse_json_text("{\n  \"kind\": \"ball\",\n  \"r\": ,\n}", "body.json");
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("body.json:3:"), std::string::npos) << e.what();
  }
}

TEST(Functions, RoundTripAndShorthand) {
  const auto w = make_weighted_sum(1.0, 1.0, make_power(2.0), make_power(0.5));
  const auto j = to_json(w);
  EXPECT_EQ(dump(to_json(bivariate_from_json(j))), dump(j));
  const auto ps = bivariate_from_json(parse_json_text(R"({"kind":"power_sum","p":2.0,"sign":"decreasing","m":2})"));
  EXPECT_DOUBLE_EQ(ps(2.0, 4.0), 0.25 + 0.0625);
  EXPECT_DOUBLE_EQ(univariate_from_json(Json("power1"))(3.0), 3.0);
  EXPECT_DOUBLE_EQ(univariate_from_json(Json("power-2.5"))(2.0), std::pow(2.0, -2.5));
  const auto tagged = univariate_from_json(parse_json_text(R"({"kind":"power","p":1,"class":"phi"})"));
  EXPECT_EQ(tagged.tag(), UnivariateClass::Phi);
  EXPECT_THROW(univariate_from_json(Json("powder2")), SpecError);
  EXPECT_THROW(univariate_from_json(parse_json_text(R"({"kind":"power","p":0})")), SpecError);
  EXPECT_THROW(bivariate_from_json(parse_json_text(R"({"kind":"power_sum","p":1,"sign":"up"})")), SpecError);
}

TEST(Dump, Deterministic17Digits) {
  Json j{{"b", 0.1}, {"a", std::numeric_limits<double>::quiet_NaN()}, {"c", 3}, {"d", Json::array()}};
  EXPECT_EQ(dump(j), "{\n  \"a\": null,\n  \"b\": 0.10000000000000001,\n  \"c\": 3,\n  \"d\": []\n}\n");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(Reports, JsonFields) {
  VerificationReport r;
  r.theorem = TheoremId::Urysohn;
  r.lhs = 1.5;
  r.rhs = 1.0;
  r.direction = Relation::GreaterEqual;
  r.margin = 0.5;
  r.tolerance = 1e-9;
  r.verdict = Verdict::Holds;
  r.equality_diagnosis = DilateDiagnosis{false, 1.2, 0.3, 512};
  const Json j = to_json(r);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["theorem"], "Urysohn");
  EXPECT_EQ(j["direction"], ">=");
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_EQ(j["equality_diagnosis"]["grid_size"], 512);
  EXPECT_EQ(j["rule"]["rule"], "circle_trapezoid");

  std::ostringstream csv;
  write_report_csv(csv, {r});
  EXPECT_EQ(csv.str(),
            "theorem_id,lhs,rhs,margin,tolerance,verdict,lambda_estimate\n"
            "Urysohn,1.5,1,0.5,1.0000000000000001e-09,holds,\n");
}

TEST(Reports, FunctionalValueRule) {
  const auto v = volume(ball(3), make_rule(3));
  const Json j = to_json(v);
  EXPECT_EQ(j["rule"]["rule"], "sphere_product_gauss");
  EXPECT_EQ(j["rule"]["n_theta"], 64);
  EXPECT_EQ(j["rule"]["N"], 64 * 128);
}
