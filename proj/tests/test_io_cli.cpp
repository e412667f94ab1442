#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "conesurf/cli.hpp"

using namespace conesurf;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result st(std::vector<std::string> args) {
  args.insert(args.begin(), "st");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string demo(const char* name) { return std::string(ST_DEMO_DATA) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("st_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, SafeRadius) {
  const Result r = st({"safe-radius", "--theta", "1.5707963", "--eps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "st-1");
  EXPECT_NEAR(j["radius"].get<double>(), 0.602080559268717, 1e-6);
  EXPECT_EQ(st({"safe-radius", "--theta", "4", "--eps", "1"}).code, 2);
}

TEST(Cli, NumbersKeepSeventeenDigits) {
  const Result r = st({"safe-radius", "--theta", "1.5707963267948966", "--eps", "1"});
  const json j = json::parse(r.out);
  EXPECT_EQ(j["radius"].get<double>(), safe_radius(1.5707963267948966, 1.0));
  EXPECT_NE(r.out.find("0.60208055926871"), std::string::npos);
}

TEST(Cli, PantsBuild) {
  const Result ok = st({"pants-build", "--legs", "boundary:2.6339157938496336,boundary:2.6339157938496336,cone:1.5707963267948966"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const json j = json::parse(ok.out);
  EXPECT_NEAR(j["seams"][2].get<double>(), 1.0217725930834, 1e-9);
  const Result bad = st({"pants-build", "--legs", "cone:4.0,boundary:1,boundary:1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, TriangleSolve) {
  const Result r = st({"triangle-solve", "--kinds", "H,H,H", "--lengths", "1.3169578969248166,1.3169578969248166,1.3169578969248166"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(st({"triangle-solve", "--kinds", "H,H"}).code, 2);
  EXPECT_EQ(st({"triangle-solve", "--kinds", "H,H,H", "--lengths", "1,x,1"}).code, 2);
}

TEST(Cli, SurfaceAndLength) {
  ASSERT_EQ(st({"surface-build", "--surface", demo("torus.json")}).code, 0);
  const Result r = st({"length", "--surface", demo("torus.json"), "--word", demo("torus_dual.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["length"].get<double>(), 1.0217725930834, 1e-8);
  const Result s = st({"length", "--surface", demo("sphere4.json"), "--word", demo("sphere4_dual.json")});
  EXPECT_EQ(s.code, 0) << s.err;
}

TEST(Cli, QuakeAndGraft) {
  const Result q = st({"quake", "--surface", demo("torus.json"), "--lamination", demo("lamination.json"), "--word",
                       demo("torus_dual.json")});
  ASSERT_EQ(q.code, 0) << q.err;
  const json jq = json::parse(q.out);
  EXPECT_EQ(jq["fn"]["twists"][0].get<double>(), 0.5);
  const Result g = st({"graft", "--surface", demo("torus.json"), "--lamination", demo("lamination.json"), "--word",
                       demo("torus_dual.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  const json jg = json::parse(g.out);
  EXPECT_GE(jg["length"].get<double>(), jg["hyperbolic_length"].get<double>());
  EXPECT_LE(jg["length"].get<double>(), jg["hyperbolic_length"].get<double>() + jg["intersection"].get<double>());
}

TEST(Cli, CheckSuites) {
  const Result q = st({"check", "quake", "--samples", "200", "--seed", "7"});
  EXPECT_EQ(q.code, 0) << q.err;
  const json j = json::parse(q.out);
  EXPECT_EQ(j["schema"], "st-1");
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(st({"check", "quake", "--samples", "200", "--seed", "7"}).out, q.out);
  EXPECT_EQ(st({"check", "area", "--samples", "100"}).code, 0);
  EXPECT_EQ(st({"check", "nope"}).code, 2);
  EXPECT_EQ(st({"check", "quake", "--family", "klein"}).code, 2);
  EXPECT_EQ(st({"check", "quake", "--length-min", "-1"}).code, 2);
}

TEST(Cli, CheckViolationExitCode) {
  // A rejected certificate counts as a failed check.
  const Result v = st({"validate-bending", "--input", demo("bending.json"), "--certificate",
                       temp_file("cert_bad.json", R"({"genus": 2, "crossings": 0, "faces": []})")});
  EXPECT_EQ(v.code, 3);
  EXPECT_FALSE(json::parse(v.out)["ok"].get<bool>());
}

TEST(Cli, Doubling) {
  const Result p = st({"double-plan", "--input", demo("bending.json"), "--steps", "3"});
  ASSERT_EQ(p.code, 0) << p.err;
  const json j = json::parse(p.out);
  EXPECT_EQ(j["path"].size(), 3u);
  EXPECT_EQ(j["path"][2]["weights"][0].get<double>(), 3.0);
  const Result v = st({"validate-bending", "--input", demo("bending.json"), "--certificate", demo("certificate.json")});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(st({"double-plan", "--input", demo("bending.json"), "--steps", "1"}).code, 2);
}

TEST(Cli, SchemaFlag) {
  for (const char* cmd : {"triangle-solve", "pants-build", "surface-build", "length", "quake", "graft", "check",
                          "safe-radius", "double-plan", "validate-bending"}) {
    const Result r = st({cmd, "--schema"});
    ASSERT_EQ(r.code, 0) << cmd;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j.is_object()) << cmd;
    EXPECT_TRUE(j.contains("output")) << cmd;
  }
}

TEST(Cli, FormatErrorsCarryPointers) {
  const Result broken = st({"surface-build", "--surface", temp_file("broken.json", "{\"genus\": 1,")});
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("invalid JSON"), std::string::npos);

  json s = json::parse(std::ifstream(demo("torus.json")));
  s["fn"]["lengths"][0] = "long";
  const Result typed = st({"surface-build", "--surface", temp_file("typed.json", s.dump())});
  EXPECT_EQ(typed.code, 2);
  EXPECT_NE(typed.err.find("/fn/lengths/0"), std::string::npos) << typed.err;

  json w = json::parse(std::ifstream(demo("torus_dual.json")));
  w["steps"][0]["piece"] = "P9";
  const Result word = st({"length", "--surface", demo("torus.json"), "--word", temp_file("word.json", w.dump())});
  EXPECT_EQ(word.code, 2);
  EXPECT_NE(word.err.find("/steps/0/piece"), std::string::npos) << word.err;

  s = json::parse(std::ifstream(demo("torus.json")));
  s["schema"] = "st-0";
  const Result schema = st({"surface-build", "--surface", temp_file("schema.json", s.dump())});
  EXPECT_EQ(schema.code, 2);
  EXPECT_NE(schema.err.find("/schema"), std::string::npos);
}

TEST(Cli, UnknownFlagsRejected) {
  EXPECT_EQ(st({"safe-radius", "--theta", "1", "--eps", "1", "--bogus"}).code, 2);
  EXPECT_EQ(st({"frobnicate"}).code, 2);
  EXPECT_EQ(st({}).code, 2);
}

TEST(Cli, OutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "st_test_out.json").string();
  std::filesystem::remove(path);
  ASSERT_EQ(st({"safe-radius", "--theta", "1", "--eps", "1", "--out", path}).code, 0);
  std::stringstream ss;
  ss << std::ifstream(path).rdbuf();
  EXPECT_EQ(json::parse(ss.str())["schema"], "st-1");
}
