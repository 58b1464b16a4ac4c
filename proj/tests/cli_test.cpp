#include <gtest/gtest.h>

#include "commands.hpp"
#include "surfdist/errors.hpp"

using namespace surfdist;
using namespace surfdist::cli;

namespace {

std::string sample(const char* name) { return std::string(SURFACES_DIR) + "/" + name + ".surf"; }

Outcome run_on(const char* command, const char* name, Options o = {}) { return run(command, sample(name), o); }

}  // namespace

TEST(SurfFile, ParsesSections) {
  const SurfaceSpec s = parse_surface_spec(
      "# comment\n[surface]\nb = x + y  # trailing\nc = 1\n[params]\nnames = k1, k2\n[run]\ncommands = check\ns0 = 7\n");
  EXPECT_EQ(s.coefficients.at("b"), "x + y");
  EXPECT_EQ(s.parameters, (std::vector<std::string>{"k1", "k2"}));
  ASSERT_TRUE(s.commands.has_value());
  EXPECT_EQ(*s.commands, (std::vector<std::string>{"check"}));
  EXPECT_EQ(s.s0, "7");
  EXPECT_FALSE(s.precanonical.has_value());
}

TEST(SurfFile, Rejections) {
  EXPECT_THROW(parse_surface_spec("[surface]\nfoo = 1\n"), ParseError);
  EXPECT_THROW(parse_surface_spec("[surfaces]\n"), ParseError);
  EXPECT_THROW(parse_surface_spec("b = 1\n"), ParseError);
  EXPECT_THROW(parse_surface_spec("[params]\nnames = k\n"), ParseError);
  EXPECT_THROW(parse_surface_spec("[surface]\nmode = symbolic\nb = 1\n"), ParseError);
  EXPECT_THROW(parse_surface_spec("[surface]\n[precanonical]\nalpha = 0\n"), ParseError);
  EXPECT_THROW(build_surface(parse_surface_spec("[surface]\nb = 1.5\n")), ParseError);
  EXPECT_THROW(build_surface(parse_surface_spec("[surface]\nb = k9\n")), ParseError);
  EXPECT_THROW(build_surface(parse_surface_spec("[surface]\n[params]\nnames = x\n")), ParseError);
}

TEST(SurfFile, PrecanonicalBlockIsCanonicalized) {
  const Surface s = build_surface(load_surface_spec(sample("precanonical")));
  EXPECT_TRUE(s.system.mu.is_zero());
  EXPECT_TRUE(s.system.nu.is_zero());
  EXPECT_EQ(s.spec.name, "precanonical");
  EXPECT_THROW(build_surface(parse_surface_spec("[surface]\n[precanonical]\nalpha = y\ndelta = 0\ntheta = x*y\n")),
               DomainError);
}

TEST(Cli, CheckExample234) {
  const Outcome o = run_on("check", "example-234");
  EXPECT_EQ(o.exit_code, exit_ok);
  EXPECT_NE(o.text.find("residuals[1]: 0\nresiduals[2]: 0\nresiduals[3]: 0\nstatus: PASS"), std::string::npos);
}

TEST(Cli, CheckFailsOnNonIntegrable) { EXPECT_EQ(run_on("check", "x-plus-y").exit_code, exit_assertion_failed); }

TEST(Cli, GrowthSpaces) {
  Options m6;
  m6.space = "m6";
  for (const auto& entry : catalog()) {
    const Outcome o = run("growth", "catalog:" + entry.name, m6);
    EXPECT_NE(o.text.find("growth: (3,5,6)"), std::string::npos) << entry.name;
  }
  const Outcome m5 = run_on("growth", "unit-bc");
  EXPECT_NE(m5.text.find("growth: (2,3,5)"), std::string::npos);
  EXPECT_NE(m5.text.find("2*p^3 - 2*q^3"), std::string::npos);
  Options hat;
  hat.space = "m6hat";
  hat.s0 = "7";
  EXPECT_NE(run_on("growth", "unit-bc", hat).text.find("growth: (3,4,6)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("check", std::string("/nonexistent.surf"), {}).exit_code, exit_parse_failure);
  EXPECT_EQ(run("check", std::string("catalog:nothing"), {}).exit_code, exit_parse_failure);
  EXPECT_EQ(run("check", std::nullopt, {}).exit_code, exit_parse_failure);
  EXPECT_EQ(run_on("invariants", "quadric").exit_code, exit_precondition);
  Options bad;
  bad.s0 = "x";
  EXPECT_EQ(run_on("growth", "unit-bc", bad).exit_code, exit_precondition);
  EXPECT_EQ(run_on("classify", "quadric-unit-mu").exit_code, exit_assertion_failed);
  EXPECT_EQ(run("catalog", std::string("nothing"), {}).exit_code, exit_parse_failure);
}

TEST(Cli, CurvatureBundles) {
  Options o;
  o.bundle = "e4";
  const Outcome flat = run_on("curvature", "example-234", o);
  EXPECT_NE(flat.text.find("flat: true"), std::string::npos);
  const Outcome bar = run_on("curvature", "unit-bc");
  EXPECT_NE(bar.text.find("[0, -1, 0]"), std::string::npos);
}

TEST(Cli, ReportJson) {
  const Outcome o = run_on("report", "quadric");
  EXPECT_EQ(o.exit_code, exit_ok);
  const Json j = Json::parse(o.text);
  EXPECT_EQ(j["classification"], "Quadric");
  EXPECT_EQ(j["bar_growth"], Json::array({2}));
  EXPECT_TRUE(j["invariants"]["gaussian_curvature"].is_null());
  EXPECT_NE(o.text.find("\"classification\": \"Quadric\""), std::string::npos);
}

TEST(Cli, ReportWitness) {
  const Json j = Json::parse(run_on("report", "example-234").text);
  EXPECT_EQ(j["witness"], "(4*x + k3)*d/dx + (y*k1^2 + k1*k2)*d/dy");
  EXPECT_EQ(j["classification"], "VeryGeneral");
  EXPECT_EQ(j["growth"]["m6"]["growth"], "(3,5,6)");
}

TEST(Cli, ReportWithEmptyCommandListHasMetadataOnly) {
  const Surface s = build_surface(parse_surface_spec("[surface]\nb = 1\nc = 1\n[run]\ncommands =\n"));
  bool ok = true;
  const Json j = build_report(s, {}, ok);
  EXPECT_TRUE(ok);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"tool", "name", "mode", "system"}));
}

TEST(Cli, ReportIsDeterministicAndRoundTrips) {
  const Outcome a = run_on("report", "symbolic");
  const Outcome b = run_on("report", "symbolic");
  EXPECT_EQ(a.exit_code, exit_ok);
  EXPECT_EQ(a.text, b.text);
  const Json j = Json::parse(a.text);
  Scope sc = Scope::standard();
  for (const char* f : {"b", "c", "mu", "nu"}) sc.function(f);
  const std::string k = j["invariants"]["gaussian_curvature"];
  EXPECT_EQ(parse(k, sc).str(), k);
}

TEST(Cli, CatalogTable) {
  const Outcome o = run("catalog", std::nullopt, {});
  EXPECT_EQ(o.exit_code, exit_ok);
  EXPECT_EQ(o.text.find("FAIL"), std::string::npos);
  Options j;
  j.json = true;
  const Json rows = Json::parse(run("catalog", std::string("example-234"), j).text);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["computed_growth"], "(2,3,4)");
  EXPECT_EQ(rows[0]["expectation_source"], "literature");
}
