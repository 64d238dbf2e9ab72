#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "process_runner.hpp"
#include "untangle/core.hpp"

namespace untangle {
namespace {

using testing::run;

const std::string kCli = UNTANGLE_CLI;
const std::string kSamples = UNTANGLE_SAMPLES;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

std::vector<nlohmann::json> json_lines(const std::string& out) {
  std::vector<nlohmann::json> v;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("untangle_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

TEST(Cli, CheckReportsP1Environment) {
  const auto r = run(kCli + " check --json " + sample("p1.ccs"));
  EXPECT_EQ(r.exit_code, 1);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["analysis"]["verdict"], "locked");
  EXPECT_EQ(lines[0]["analysis"]["reports"][0], (nlohmann::json{{"a", "i"}, {"b", "o"}, {"c", "i"}}));
  EXPECT_TRUE(lines[0].contains("timing_us"));
}

TEST(Cli, CheckHumanOutputPointsAtPrefixes) {
  const auto r = run(kCli + " check " + sample("p5.ccs"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("(a:i, c:o)"), std::string::npos);
  EXPECT_NE(r.out.find("p5.ccs:2:12: note: prefix '~c'"), std::string::npos);
}

TEST(Cli, CheckNestedLockFreeIsClean) {
  EXPECT_EQ(run(kCli + " check " + sample("nested_lock_free.ccs")).exit_code, 0);
  EXPECT_EQ(run(kCli + " check --dl-mode strict " + sample("nested_lock_free.ccs")).exit_code, 0);
}

TEST(Cli, CheckErrors) {
  EXPECT_EQ(run(kCli + " check " + sample("bad_syntax.ccs")).exit_code, 2);
  EXPECT_EQ(run(kCli + " check " + sample("not_linear.ccs")).exit_code, 2);
  EXPECT_EQ(run(kCli + " check /nonexistent/file.ccs").exit_code, 2);
  const auto r = run(kCli + " check --json " + sample("bad_syntax.ccs"));
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["error"]["kind"], "parse");
  EXPECT_EQ(lines[0]["error"]["line"], 1);
}

TEST(Cli, CheckStrictModeMissesSelfHolding) {
  EXPECT_EQ(run(kCli + " check " + sample("p3.ccs")).exit_code, 1);
  EXPECT_EQ(run(kCli + " check --dl-mode strict " + sample("p3.ccs")).exit_code, 0);
}

TEST(Cli, MultipleProcessesPerFile) {
  const auto r = run(kCli + " check --json " + sample("mixed.ccs"));
  EXPECT_EQ(r.exit_code, 1);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  for (std::size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(lines[i]["index"], i);
  EXPECT_EQ(lines[1]["analysis"]["verdict"], "locked");
}

TEST(Cli, OracleWitnessForP2) {
  const auto r = run(kCli + " oracle --json --witness " + sample("p2.ccs"));
  EXPECT_EQ(r.exit_code, 1);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["classification"]["potentially_self_locking"], true);
  ASSERT_EQ(lines[0]["witness"]["trace"].size(), 1u);
  EXPECT_EQ(lines[0]["witness"]["trace"][0]["channel"], "d");
}

TEST(Cli, OracleInertIsLockFree) {
  const auto r = run(kCli + " oracle --json " + temp_file("zero.ccs", "0\n"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(json_lines(r.out)[0]["classification"]["lock_free"], true);
}

TEST(Cli, OracleBudgetExceeded) {
  std::string wide;
  for (int i = 0; i < 14; ++i) {
    if (i) wide += " | ";
    wide += "x" + std::to_string(i) + ".0 | ~x" + std::to_string(i) + ".0";
  }
  const auto path = temp_file("wide.ccs", wide + "\n");
  EXPECT_EQ(run(kCli + " oracle --budget 1000 " + path).exit_code, 3);
  const auto r = run(kCli + " oracle --json --budget 1000 " + path);
  EXPECT_EQ(json_lines(r.out)[0]["error"]["kind"], "budget");
}

TEST(Cli, RefactorExample5) {
  const auto d1 = run(kCli + " refactor --strategy d1 " + sample("p5.ccs"));
  EXPECT_EQ(d1.exit_code, 0);
  EXPECT_EQ(d1.out, "(a.0 | ~b.c.0) | (~c.0 | b.~a.0)\n");
  const auto d2 = run(kCli + " refactor --strategy d2 " + sample("p5.ccs"));
  EXPECT_EQ(d2.exit_code, 0);
  EXPECT_TRUE(struct_eq(parse(d2.out), parse("(~a.0 | a.~b.c.0) | (~c.0 | b.0)"))) << d2.out;
}

TEST(Cli, RefactorVerifyBlock) {
  const auto r = run(kCli + " refactor --json --verify --strategy d2 " + sample("p5.ccs"));
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["verification"]["still_linear"], true);
  EXPECT_EQ(lines[0]["verification"]["output_lock_free"], true);
  EXPECT_EQ(lines[0]["verification"]["env_used"], (nlohmann::json{{"a", "i"}, {"c", "o"}}));
}

TEST(Cli, RefactorNothingToDo) {
  EXPECT_EQ(run(kCli + " refactor --strategy d1 " + temp_file("a.ccs", "a.0\n")).exit_code, 1);
  EXPECT_EQ(run(kCli + " refactor --strategy d1 " + sample("not_linear.ccs")).exit_code, 2);
  EXPECT_EQ(run(kCli + " refactor " + sample("p5.ccs")).exit_code, 2);
}

TEST(Cli, GenIsDeterministic) {
  const auto cmd = kCli + " gen --seed 7 --names 3 --complete --count 20";
  const auto a = run(cmd), b = run(cmd);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  int n = 0;
  for (std::string line; std::getline(in, line); ++n) EXPECT_NO_THROW(parse(line)) << line;
  EXPECT_EQ(n, 20);
}

TEST(Cli, FmtCanonicalises) {
  const auto path = temp_file("fmt.ccs", "a.0|0\n");
  const auto r = run(kCli + " fmt " + path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "a.0\n");
  const auto again = run(kCli + " fmt " + temp_file("fmt2.ccs", r.out));
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(run(kCli + " fmt " + sample("bad_syntax.ccs")).exit_code, 2);
}

TEST(Cli, FmtInPlaceIsIdempotent) {
  const auto path = temp_file("fmt3.ccs", "(c.0 | 0) | a.(~b.0 | 0)\n\nb.0\n");
  EXPECT_EQ(run(kCli + " fmt -i " + path).exit_code, 0);
  std::stringstream first;
  first << std::ifstream(path).rdbuf();
  EXPECT_EQ(first.str(), "a.~b.0 | c.0\n\nb.0\n");
  run(kCli + " fmt -i " + path);
  std::stringstream second;
  second << std::ifstream(path).rdbuf();
  EXPECT_EQ(second.str(), first.str());
}

TEST(Cli, CheckAndOracleAgreeOnSamples) {
  for (const auto& entry : std::filesystem::directory_iterator(kSamples)) {
    const auto check = run(kCli + " check --json " + entry.path().string());
    const auto oracle = run(kCli + " oracle --json " + entry.path().string());
    const auto c = json_lines(check.out), o = json_lines(oracle.out);
    ASSERT_EQ(c.size(), o.size()) << entry.path();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].contains("analysis") || c[i]["analysis"]["verdict"] != "locked") continue;
      EXPECT_EQ(o[i]["classification"]["potentially_self_locking"], true) << entry.path() << " #" << i;
    }
  }
}

}  // namespace
}  // namespace untangle
