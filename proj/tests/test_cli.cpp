#include "paradoxlab/cli.hpp"
#include "paradoxlab/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace paradoxlab;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PARADOXLAB_DATA_DIR) + "/" + name; }

Json rational(long long n, long long d) { return Json{{"num", n}, {"den", d}}; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("paradoxlab_test_" + name);
}

}  // namespace

TEST(Emit, RationalEncoding) {
  EXPECT_EQ(to_json(Rational(BigInt(9), BigInt(32))), rational(9, 32));
  const Rational big(BigInt(1), BigInt(1) << 70);
  const Json j = to_json(big);
  EXPECT_TRUE(j["den"].is_string());
  EXPECT_EQ(rational_from_json(j), big);
}

TEST(Emit, StableAndFormatChecked) {
  ReportDocument doc;
  doc.results["x"] = to_json(Rational(BigInt(9), BigInt(32)));
  doc.results["a"] = 1;
  EXPECT_EQ(emit(doc, "json"), emit(doc, "json"));
  EXPECT_LT(emit(doc, "json").find("\"a\""), emit(doc, "json").find("\"x\""));
  EXPECT_EQ(emit(doc, "csv"), "key,value\na,1\nx,9/32\n");
  EXPECT_THROW(emit(doc, "xml"), std::exception);
}

TEST(Cli, AnalyzeTheorem1) {
  const Outcome o = call({"analyze", "theorem1"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Json j = o.json();
  EXPECT_EQ(j["results"]["lower"], rational(9, 32));
  EXPECT_EQ(j["results"]["upper"], rational(9, 40));
  EXPECT_EQ(j["results"]["contradiction"], true);
  EXPECT_EQ(j["results"]["claim"], "theorem1-bounds");
  EXPECT_FALSE(j.contains("wall_time_s"));
}

TEST(Cli, AnalyzeTheorem1BruteForce) {
  const Outcome o = call({"analyze", "theorem1", "--mode", "brute-force"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Json j = o.json();
  EXPECT_EQ(j["results"]["lower"], rational(9, 32));
  EXPECT_EQ(j["results"]["forced_table"].size(), 32U);
  EXPECT_TRUE(j["checks"]["brute_force_matches_formula"].get<bool>());
}

TEST(Cli, InjectedFaultExitsTwo) {
  const Outcome o = call({"analyze", "theorem1", "--mode", "brute-force", "--inject-fault"});
  EXPECT_EQ(o.code, kExitVerification);
  const Json e = Json::parse(o.err);
  EXPECT_EQ(e["error"]["kind"], "VerificationFailed");
}

TEST(Cli, AnalyzeTargets) {
  const Json h = call({"analyze", "hausdorff"}).json();
  EXPECT_EQ(h["results"]["sigma_value"], rational(1, 2));
  EXPECT_EQ(h["results"]["tau_value"], rational(1, 3));

  const Json e4 = call({"analyze", "ex4"}).json();
  EXPECT_EQ(e4["results"]["lower_bound"], rational(1, 24));
  EXPECT_EQ(e4["results"]["conflict_table"].size(), 16U);

  const Json e5 = call({"analyze", "ex5-degrees"}).json();
  EXPECT_EQ(e5["results"]["zero_fraction"], rational(1, 16));
  EXPECT_EQ(e5["results"]["cond_deg3"], rational(3, 8));
  EXPECT_EQ(e5["results"]["cond_deg4"], rational(1, 8));

  const Outcome t3 = call({"analyze", "theorem3", "--trials", "20000"});
  ASSERT_EQ(t3.code, kExitOk) << t3.out;
  EXPECT_EQ(t3.json()["results"]["discriminant"], rational(-7, 1));

  const Json ie = call({"analyze", "inclusion-exclusion", "--count", "200"}).json();
  EXPECT_EQ(ie["results"]["holds"], 200);
}

TEST(Cli, EveryNumericResultHasProvenance) {
  for (const auto& [target, claim] : analyze_claims()) {
    const Outcome o = call({"analyze", target, "--trials", "2000", "--count", "50"});
    ASSERT_EQ(o.code, kExitOk) << target << o.err;
    const Json j = o.json();
    EXPECT_EQ(j["results"]["claim"], claim);
    for (const auto& [key, value] : j["results"].items()) {
      if (key == "claim") continue;
      EXPECT_TRUE(j["provenance"].contains(key)) << target << "." << key;
    }
  }
  std::set<std::string> claims;
  for (const auto& [target, claim] : analyze_claims()) claims.insert(claim);
  EXPECT_EQ(claims.size(), analyze_claims().size());
}

TEST(Cli, ConflictTableCsv) {
  const Outcome o = call({"--format", "csv", "analyze", "ex4"});
  ASSERT_EQ(o.code, kExitOk);
  std::istringstream lines(o.out);
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("image,twin_image", 0), 0U) << line;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 16);
}

TEST(Cli, ByteStable) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"analyze", "theorem3", "--trials", "5000"},
        std::vector<std::string>{"construct", "--witness", "ex5", "--radius", "4", "--seed", "3"}}) {
    EXPECT_EQ(call(args).out, call(args).out);
  }
}

TEST(Cli, SolveBbConflictUnsat) {
  const Outcome o = call({"solve", "--rule", "ex4", "--radius", "2", "--pin", data("bb-conflict.json"), "--bits",
                          data("bb-conflict-bits.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.json()["results"]["status"], "UNSAT");
}

TEST(Cli, SolveThenVerifyRoundTrip) {
  const auto path = temp_file("solve.json");
  const Outcome o = call({"--output", path.string(), "solve", "--rule", "hausdorff", "--radius", "3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Outcome v = call({"verify", "--rule", "hausdorff", "--colouring", path.string()});
  ASSERT_EQ(v.code, kExitOk) << v.err;
  EXPECT_EQ(v.json()["results"]["violations"].size(), 0U);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyReportsViolations) {
  const auto path = temp_file("bad.json");
  std::ofstream(path) << R"({"vertices": [["e", "A"], ["s", "A"], ["t", "A"], ["t^2", "A"]]})";
  const Outcome v = call({"verify", "--rule", "hausdorff", "--colouring", path.string()});
  EXPECT_EQ(v.code, kExitVerification);
  EXPECT_FALSE(v.json()["results"]["violations"].empty());
  std::filesystem::remove(path);
}

TEST(Cli, ConstructWitnesses) {
  for (const std::string& w : {"hausdorff", "ex1", "ex5", "orbitQ"}) {
    const Outcome o = call({"construct", "--witness", w, "--radius", "4", "--seed", "2"});
    EXPECT_EQ(o.code, kExitOk) << w << o.err;
    EXPECT_TRUE(o.json()["results"]["colouring"].contains("vertices")) << w;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"analyze", "nonsense"}).code, kExitUsage);
  EXPECT_EQ(call({"--format", "xml", "analyze", "hausdorff"}).code, kExitUsage);
  EXPECT_EQ(call({"solve", "--rule", "ex9", "--radius", "2"}).code, kExitUsage);
  const Outcome missing = call({"verify", "--rule", "ex1", "--colouring", "/nonexistent.json"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_TRUE(Json::parse(missing.err)["error"].contains("kind"));
}

TEST(Cli, TimingAndConfig) {
  const Json timed = call({"--timing", "analyze", "hausdorff"}).json();
  EXPECT_TRUE(timed.contains("wall_time_s"));
  const auto cfg = temp_file("cfg.txt");
  std::ofstream(cfg) << "# settings\nformat = csv\nthreads = 2\n";
  const Outcome o = call({"--config", cfg.string(), "analyze", "hausdorff"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out.rfind("key,value", 0), 0U);
  std::filesystem::remove(cfg);
}

TEST(Cli, ThreadCountDoesNotChangeBytes) {
  const std::vector<std::string> args{"analyze", "inclusion-exclusion", "--count", "300"};
  std::string first;
  for (const char* threads : {"1", "4", "8"}) {
    setenv("PARADOXLAB_THREADS", threads, 1);
    const std::string bytes = call(args).out;
    if (first.empty()) first = bytes;
    EXPECT_EQ(bytes, first) << threads;
  }
  unsetenv("PARADOXLAB_THREADS");
}
