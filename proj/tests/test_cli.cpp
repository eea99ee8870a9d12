#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace wittc;
using namespace wittc::testing;
using Out = wittc::testing::Run;

namespace {

std::string cli() { return WITTC_CLI; }

Out wittc_run(const std::string& args) { return shell(cli() + " " + args + " 2>/dev/null"); }

// Captures stderr only.
Out wittc_err(const std::string& args) { return shell(cli() + " " + args + " 2>&1 >/dev/null"); }

std::string fx(const std::string& name) { return "'" + fixture(name) + "'"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "wittc_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

void expect_reason_line(const std::string& args, int code) {
  const Out r = wittc_err(args);
  ASSERT_FALSE(r.out.empty()) << args;
  std::string last = r.out.substr(0, r.out.find_last_not_of('\n') + 1);
  last = last.substr(last.find_last_of('\n') + 1);
  const Json j = Json::parse(last);
  EXPECT_EQ(j.at("exit").get<int>(), code) << args;
  EXPECT_TRUE(j.contains("reason"));
}

}  // namespace

TEST(Check, Examples) {
  const Out n = wittc_run("check " + fx("n_table.json"));
  EXPECT_EQ(n.code, 1);
  EXPECT_TRUE(contains(n.out, "(p=2,a=1)"));
  EXPECT_EQ(wittc_run("check " + fx("pow_3.json")).code, 0);
  EXPECT_EQ(wittc_run("check " + fx("short_table.json")).code, 3);
  EXPECT_EQ(wittc_run("check " + fx("malformed.json")).code, 2);
  EXPECT_EQ(wittc_run("check /nonexistent/file.json").code, 2);
}

TEST(Check, GaussianCoefficientsUseLemmaBound) {
  const Out r = wittc_run("check " + fx("two_pow_plus_i.json") + " --lemma-prime-bound 13");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "lemma_bound p=3 P=(3) inert f=2: ok"));
  EXPECT_TRUE(contains(r.out, "lemma_bound p=2 P=(1+1*w) ramified f=1: ok"));
}

TEST(Report, Examples) {
  const Out g = wittc_run("report " + fx("gaussian.json"));
  EXPECT_EQ(g.code, 0);
  EXPECT_TRUE(contains(g.out, "minimal polynomial: X^4 - 1"));
  EXPECT_TRUE(contains(g.out, "orbit size: 4"));
  EXPECT_TRUE(contains(g.out, "minimal modulus: 4"));
  EXPECT_TRUE(contains(g.out, "algebra dimension: 4"));
  EXPECT_TRUE(contains(g.out, "verdict: integral"));
  const Out t = wittc_run("report " + fx("trace.json"));
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(contains(t.out, "minimal polynomial: X^3 - 4X"));
  EXPECT_TRUE(contains(t.out, "orbit size: 3"));
  EXPECT_TRUE(contains(t.out, "algebra dimension: 3"));
  const Out two = wittc_run("report " + fx("pow_2.json"));
  EXPECT_EQ(two.code, 1);
  EXPECT_TRUE(contains(two.out, "verdict: not integral"));
  EXPECT_TRUE(contains(two.out, "heights grow"));
  EXPECT_EQ(wittc_run("report " + fx("n_table.json")).code, 3);
}

TEST(Orbit, StateCountsAndFiles) {
  const std::vector<std::pair<std::string, std::string>> cases{{"gaussian.json", "states: 4"}, {"trace.json", "states: 3"}, {"const_7.json", "states: 1"}};
  for (const auto& [name, line] : cases) {
    const Out r = wittc_run("orbit " + fx(name) + " --dot " + tmp("o.dot") + " --json " + tmp("o.json"));
    EXPECT_EQ(r.code, 0) << name;
    EXPECT_TRUE(contains(r.out, line)) << name;
    const Json j = Json::parse(slurp(tmp("o.json")));
    EXPECT_TRUE(j.at("complete").get<bool>());
    EXPECT_TRUE(contains(slurp(tmp("o.dot")), "digraph dfao {"));
  }
  EXPECT_EQ(slurp(tmp("o.dot")).size() > 0, true);
  wittc_run("orbit " + fx("gaussian.json") + " --dot " + tmp("g.dot"));
  EXPECT_EQ(slurp(tmp("g.dot")), slurp(fixture("gaussian.dot")));
}

TEST(Orbit, IncompleteIsFlagged) {
  const Out r = wittc_run("orbit " + fx("pow_2.json") + " --max-states 8 --json " + tmp("inc.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(Json::parse(slurp(tmp("inc.json"))).at("complete").get<bool>());
}

TEST(Eval, Examples) {
  const Out r = wittc_run("eval " + fx("gaussian.json") + " --at 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-1\n");
  EXPECT_EQ(wittc_run("eval " + fx("two_plus_three.json") + " --at 3").out, "35\n");
  EXPECT_EQ(wittc_run("eval " + fx("short_table.json") + " --at 11").code, 3);
  EXPECT_EQ(wittc_run("eval " + fx("gaussian.json") + " --at 0").code, 2);
  EXPECT_EQ(wittc_run("eval " + fx("gaussian.json") + " --at x").code, 2);
}

TEST(NormPullback, Examples) {
  const std::vector<std::pair<std::string, std::string>> cases{{"1+i", "value: -1"}, {"3", "value: 0+1*w"}, {"2+i", "value: 0+1*w"}};
  for (const auto& [ideal, line] : cases) {
    const Out r = wittc_run("norm-pullback " + fx("gaussian.json") + " --d -1 --ideal '" + ideal + "'");
    EXPECT_EQ(r.code, 0) << ideal;
    EXPECT_TRUE(contains(r.out, line)) << ideal << "\n" << r.out;
  }
  const Out c = wittc_run("norm-pullback " + fx("gaussian.json") + " --d -1 --ideal '(1+i)*(2+i)^2' --check --max-exp 3");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(contains(c.out, "N(A) = 50"));
  EXPECT_TRUE(contains(c.out, "congruence: ok"));
  EXPECT_EQ(wittc_run("norm-pullback " + fx("gaussian.json") + " --d -1 --ideal '(1+i'").code, 2);
  EXPECT_EQ(wittc_run("norm-pullback " + fx("gaussian.json") + " --d -1 --ideal '5'").code, 2);
  EXPECT_EQ(wittc_run("norm-pullback " + fx("gaussian.json") + " --d -5 --ideal '2'").code, 2);
}

TEST(Dr, Tables) {
  const Out one = wittc_run("dr --modulus 1 --table");
  EXPECT_EQ(one.code, 0);
  EXPECT_TRUE(contains(one.out, "*,0\n0,0\n"));
  const Out six = wittc_run("dr --modulus 6 --table");
  EXPECT_TRUE(contains(six.out, "2,0,2,4,0,2,4\n"));
  EXPECT_TRUE(contains(six.out, "5,0,5,4,3,2,1\n"));
  const Out four = wittc_run("dr --modulus 4 --table");
  EXPECT_TRUE(contains(four.out, "2,0,2,0,2\n"));
  EXPECT_EQ(wittc_run("dr --modulus 0").code, 2);
}

TEST(Christol, SynthAndVerify) {
  const Out s = wittc_run("christol synth " + fx("pow2_synth.json") + " --out " + tmp("pow2.json"));
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(contains(s.out, "states: 3"));
  const DigitDfao d = digit_dfao_from_json(read_json_file(tmp("pow2.json")));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(wittc_run("christol verify --machine " + tmp("pow2.json") + " --poly " + fx("pow2_poly.json")).code, 0);
  EXPECT_EQ(wittc_run("christol verify --machine " + fx("thue_morse_machine.json") + " --poly " + fx("thue_morse_poly.json")).code, 0);
  const Out bad = wittc_run("christol verify --machine " + fx("thue_morse_machine.json") + " --poly " + fx("pow2_poly.json"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "first mismatch at index 7"));
  const Out tm = wittc_run("christol synth " + fx("thue_morse_series.json"));
  EXPECT_EQ(tm.code, 0);
  EXPECT_EQ(Json::parse(tm.out).at("states").size(), 2u);
}

TEST(ExitDiscipline, ReasonLines) {
  expect_reason_line("check " + fx("n_table.json"), 1);
  expect_reason_line("check " + fx("short_table.json"), 3);
  expect_reason_line("check " + fx("malformed.json"), 2);
  expect_reason_line("frobnicate", 2);
  expect_reason_line("report " + fx("pow_2.json"), 1);
  expect_reason_line("christol verify --machine " + fx("thue_morse_machine.json") + " --poly " + fx("pow2_poly.json"), 1);
  EXPECT_EQ(shell(cli() + " 2>/dev/null").code, 2);
  EXPECT_TRUE(wittc_err("check " + fx("pow_3.json")).out.empty());
}

TEST(Determinism, IdenticalAcrossRunsAndWorkers) {
  const std::vector<std::string> commands{"check " + fx("n_table.json"), "check " + fx("two_plus_three.json"),
                                          "report " + fx("gaussian.json"), "report " + fx("pow_2.json"),
                                          "orbit " + fx("trace.json") + " --json -", "christol synth " + fx("pow2_synth.json")};
  for (const auto& c : commands) {
    const Out base = wittc_run(c);
    for (const char* w : {"1", "2", "4"}) {
      ASSERT_EQ(shell("WITTC_WORKERS=" + std::string(w) + " " + cli() + " " + c + " 2>/dev/null").out, base.out) << c;
      ASSERT_EQ(wittc_run(c + " --workers " + w).out, base.out) << c;
    }
    ASSERT_EQ(shell("WITTC_SEED=7 " + cli() + " " + c + " 2>/dev/null").out, base.out);
  }
}
