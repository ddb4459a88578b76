#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "amscheck/trace.hpp"
#include "amscheck_tools/commands.hpp"

namespace amscheck::tools {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kFixtures = AMSCHECK_FIXTURE_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("amscheck_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

CheckOptions check_opts(const std::string& trace, const std::string& assertions) {
  CheckOptions o;
  o.trace_path = trace;
  o.assertion_path = assertions;
  o.json = true;
  return o;
}

TEST_F(CliTest, SettlingFixturePasses) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cmd_check(check_opts(kFixtures + "/settling_time.csv", kFixtures + "/settling_time.amsal"), out, err);
  EXPECT_EQ(rc, kExitOk) << err.str();
  const json doc = json::parse(out.str());
  EXPECT_EQ(doc["schema"], "amscheck-report");
  const json& a = doc["assertions"][0];
  EXPECT_EQ(a["name"], "SettlingTime");
  ASSERT_EQ(a["nonvacuous"].size(), 1U);
  EXPECT_NEAR(a["nonvacuous"][0][0].get<double>(), 0.0007, 1e-9);
  EXPECT_NEAR(a["nonvacuous"][0][1].get<double>(), 0.0007, 1e-9);
  EXPECT_TRUE(a["nonvacuous"][0][2].get<bool>());
  EXPECT_TRUE(a["nonvacuous"][0][3].get<bool>());
  EXPECT_TRUE(a["fail"].empty());
}

TEST_F(CliTest, PreciseDelayFixtureFails) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cmd_check(check_opts(kFixtures + "/fig1.csv", kFixtures + "/fig1_dense.amsal"), out, err);
  EXPECT_EQ(rc, kExitFail);
  const json doc = json::parse(out.str());
  const json& fail = doc["assertions"][0]["fail"];
  ASSERT_EQ(fail.size(), 1U);
  EXPECT_LE(fail[0][0].get<double>(), 1.05e-6 + 1e-12);
  EXPECT_GE(fail[0][1].get<double>(), 1.05e-6 - 1e-12);
}

TEST_F(CliTest, EmptyAssertionFileIsAnError) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_check(check_opts(kFixtures + "/settling_time.csv", file("empty.amsal", "")), out, err), kExitError);
  EXPECT_NE(err.str().find("no assertions"), std::string::npos);
}

TEST_F(CliTest, ParseAndIoErrors) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_check(check_opts(kFixtures + "/settling_time.csv", file("bad.amsal", "{x} |-> {")), out, err),
            kExitError);
  EXPECT_NE(err.str().find("parse error"), std::string::npos);
  EXPECT_EQ(cmd_check(check_opts((dir_ / "missing.csv").string(), kFixtures + "/settling_time.amsal"), out, err),
            kExitError);
}

TEST_F(CliTest, ReportIsByteIdentical) {
  CheckOptions o = check_opts(kFixtures + "/settling_time.csv", kFixtures + "/settling_time.amsal");
  o.report_path = (dir_ / "a.json").string();
  std::ostringstream out1;
  std::ostringstream out2;
  std::ostringstream err;
  ASSERT_EQ(cmd_check(o, out1, err), kExitOk);
  std::ifstream f(*o.report_path);
  std::stringstream first;
  first << f.rdbuf();
  ASSERT_EQ(cmd_check(o, out2, err), kExitOk);
  EXPECT_EQ(out1.str(), out2.str());
  std::ifstream g(*o.report_path);
  std::stringstream second;
  second << g.rdbuf();
  EXPECT_EQ(first.str(), second.str());
}

TEST_F(CliTest, AssertNameFilter) {
  const std::string assertions = file("two.amsal",
                                      "property Alpha{}; {V(Vout)>2} |-> {V(Vout)>0}; endproperty\n"
                                      "property Beta{}; {V(Vout)>0.5} |-> {V(Vout)>2}; endproperty\n");
  CheckOptions o = check_opts(kFixtures + "/settling_time.csv", assertions);
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_check(o, out, err), kExitFail);
  o.assert_name = "Al*";
  std::ostringstream out2;
  EXPECT_EQ(cmd_check(o, out2, err), kExitOk);
  EXPECT_EQ(json::parse(out2.str())["assertions"].size(), 1U);
  o.assert_name = "Gamma";
  std::ostringstream out3;
  EXPECT_EQ(cmd_check(o, out3, err), kExitError);
}

std::string stream_text(const Trace& tr) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "time";
  for (const auto& s : tr.signals()) ss << ' ' << s.name;
  ss << '\n';
  for (std::size_t i = 0; i < tr.size(); ++i) {
    ss << tr.times()[i];
    for (std::size_t s = 0; s < tr.signals().size(); ++s) ss << ' ' << tr.column(s)[i];
    ss << '\n';
  }
  return ss.str();
}

TEST_F(CliTest, StreamMatchesCheckOnFixtures) {
  struct Case {
    const char* trace;
    const char* assertions;
    int rc;
  };
  for (const Case& c : {Case{"settling_time.csv", "settling_time.amsal", kExitOk},
                        Case{"fig1.csv", "fig1_dense.amsal", kExitFail}}) {
    std::ostringstream out;
    std::ostringstream err;
    ASSERT_EQ(cmd_check(check_opts(kFixtures + "/" + c.trace, kFixtures + "/" + c.assertions), out, err), c.rc);
    const json report = json::parse(out.str())["assertions"][0];

    const Trace tr = load_csv(kFixtures + "/" + c.trace);
    StreamOptions so;
    so.assertion_path = kFixtures + "/" + c.assertions;
    for (const auto& s : tr.signals()) {
      if (s.kind == SignalKind::Boolean) so.bool_signals.push_back(s.name);
    }
    std::istringstream in(stream_text(tr));
    std::ostringstream sout;
    ASSERT_EQ(cmd_stream(so, in, sout, err), c.rc) << err.str();
    std::string line;
    std::string last;
    std::istringstream lines(sout.str());
    while (std::getline(lines, line)) last = line;
    const json summary = json::parse(last)["summary"][report["name"].get<std::string>()];
    EXPECT_EQ(summary["match"], report["nonvacuous"]);
    EXPECT_EQ(summary["fail"], report["fail"]);
    EXPECT_EQ(summary["vacuous-end"], report["vacuous"]);
  }
}

TEST_F(CliTest, StreamProtocolErrors) {
  StreamOptions so;
  so.assertion_path = kFixtures + "/fig1_dense.amsal";
  std::ostringstream out;
  std::ostringstream err;
  std::istringstream no_header("0 1 2\n");
  EXPECT_EQ(cmd_stream(so, no_header, out, err), kExitError);
  std::istringstream ragged("time Vin Vout\n0 0 0\n1e-6 1\n");
  EXPECT_EQ(cmd_stream(so, ragged, out, err), kExitError);
  EXPECT_NE(err.str().find("line 3"), std::string::npos);
  std::istringstream backwards("time Vin Vout\n1e-6 0 0\n0 1 1\n");
  EXPECT_EQ(cmd_stream(so, backwards, out, err), kExitError);
  so.signals = {"Vin", "Vout"};
  std::istringstream headerless("0 0 0\n1e-6 0 0\n");
  EXPECT_EQ(cmd_stream(so, headerless, out, err), kExitOk);
}

TEST_F(CliTest, OracleCodegenGenwave) {
  std::ostringstream out;
  std::ostringstream err;
  OracleOptionsCli oo;
  oo.trace_path = kFixtures + "/settling_time.csv";
  oo.assertion_path = kFixtures + "/settling_time.amsal";
  EXPECT_EQ(cmd_oracle(oo, out, err), kExitOk) << err.str();
  const json orc = json::parse(out.str())["oracle"][0];
  std::size_t match_points = 0;
  for (const auto& run : orc["runs"]) {
    if (run["class"] == "match") match_points += run["points"].get<std::size_t>();
  }
  EXPECT_EQ(match_points, 1U);

  CodegenOptionsCli co;
  co.assertion_path = kFixtures + "/rising_sequence.amsal";
  co.out_path = (dir_ / "mon.vams").string();
  EXPECT_EQ(cmd_codegen(co, out, err), kExitOk);
  EXPECT_TRUE(fs::exists(*co.out_path));

  GenwaveOptions go;
  go.spec_path = kFixtures + "/settling_time.json";
  std::ostringstream csv;
  EXPECT_EQ(cmd_genwave(go, csv, err), kExitOk);
  std::ifstream shipped(kFixtures + "/settling_time.csv");
  std::stringstream want;
  want << shipped.rdbuf();
  EXPECT_EQ(csv.str(), want.str());
  go.spec_path = file("bad.json", "{\"signals\": 3}");
  EXPECT_EQ(cmd_genwave(go, csv, err), kExitError);
}

}  // namespace
}  // namespace amscheck::tools
