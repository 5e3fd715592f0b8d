#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "starorlicz/cli.hpp"
#include "starorlicz/serialization.hpp"

using namespace starorlicz;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "star_orlicz_cli_test";
    std::filesystem::create_directories(dir_);
    write("ball1.json", R"({"kind":"ball","r":1})");
    write("ball2.json", R"({"kind":"ball","r":2})");
    write("ellipse.json", R"({"kind":"ellipsoid","axes":[2.5,1]})");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, MixedVolumeBallOracle) {
  // Ṽ_t(2B, B) = (1/2)∫ 2 · 2² dθ = 8π.
  const auto r = run_cli({"mixedvol", "--phi", R"({"kind":"power","p":1})", "--K", path("ball2.json"),
                          "--L", path("ball1.json"), "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 8.0 * std::numbers::pi, 1e-12);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["rule"]["rule"], "circle_trapezoid");
}

TEST_F(CliTest, VariationTargetPi) {
  const auto r = run_cli({"variation", "--phi1", "power1", "--phi2", "power1", "--K", path("ball1.json"),
                          "--L", path("ball1.json"), "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["target"]["value"].get<double>(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(j["product"].get<double>(), std::numbers::pi, 1e-5 * std::numbers::pi);
  EXPECT_EQ(j["epsilons"].size(), 3u);
}

TEST_F(CliTest, VerifySuiteDeterministic) {
  const std::vector<std::string> args{"verify", "--suite", "all", "--n", "2", "--seed", "7", "--trials", "10"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 70u);
}

TEST_F(CliTest, MisdeclaredConvexityExit2) {
  const auto r = run_cli({"verify", "--theorem", "DualOBM", "--phi",
                          R"({"kind":"power_sum","p":1,"sign":"decreasing","m":2})", "--K",
                          "@" + path("ellipse.json"), "--L", "@" + path("ball1.json"), "--declared",
                          "convex", "--n", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("declaration"), std::string::npos);
}

TEST_F(CliTest, SingleVerifyWritesCsv) {
  const auto r = run_cli({"verify", "--theorem", "DualMinkowski", "--phi",
                          R"({"kind":"power","p":1,"class":"Phi"})", "--K", path("ellipse.json"), "--L",
                          path("ball1.json"), "--csv", path("m.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("m.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "theorem_id,lhs,rhs,margin,tolerance,verdict,lambda_estimate");
  EXPECT_EQ(row.rfind("DualMinkowski,", 0), 0u);
}

TEST_F(CliTest, InputErrorsExit2) {
  EXPECT_EQ(run_cli({"volume", "--K", R"({"kind":"ball")"}).code, 2);
  EXPECT_EQ(run_cli({"volume", "--K", path("missing.json")}).code, 2);
  EXPECT_EQ(run_cli({"volume", "--K", path("ellipse.json"), "--n", "3"}).code, 2);
  EXPECT_EQ(run_cli({"volume"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  const auto bad = run_cli({"volume", "--K", R"({"kind":"dilate","lambda":2,"child":{"kind":"ball","r":0}})"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("$.child"), std::string::npos) << bad.err;
}

TEST_F(CliTest, SweepCsv) {
  const auto r = run_cli({"sweep", "--theorem", "Isoperimetric", "--ecc", "1,2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theorem_id,eccentricity,lhs,rhs,margin,tolerance,verdict,lambda_estimate");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, AddAndOutFile) {
  const auto r = run_cli({"add", "--phi", R"({"kind":"power_sum","p":1,"sign":"decreasing","m":2})", "--K",
                          path("ball1.json"), "--L", path("ball2.json"), "--out", path("sum.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path("sum.json"));
  const Json j = Json::parse(in);
  EXPECT_NEAR(j["volume"]["value"].get<double>(), 9.0 * std::numbers::pi, 1e-11);
  EXPECT_NEAR(j["samples"][0]["rho"].get<double>(), 3.0, 1e-14);
}

TEST_F(CliTest, SurfaceAndMeanRadius) {
  const auto s = run_cli({"surface", "--phi", "power2", "--K", path("ball2.json")});
  ASSERT_EQ(s.code, 0) << s.err;
  // S̃_φ(rB) = n ω r^n φ(r) = 2π · 4 · 4.
  EXPECT_NEAR(Json::parse(s.out)["value"].get<double>(), 32.0 * std::numbers::pi, 1e-11);
  const auto m = run_cli({"meanradius", "--phi", "power-1", "--K", path("ball2.json")});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NEAR(Json::parse(m.out)["value"].get<double>(), 2.0, 1e-13);
}
