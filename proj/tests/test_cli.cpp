// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/hammer/hammer.hpp"
#include "oracles.hpp"

using namespace hammerforge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Outcome cli(const hftest::TempDir& dir, const std::vector<std::string>& args, const std::string& input = "") {
  std::string cmd = quote(HF_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  std::string in = dir.write("stdin.txt", input);
  cmd += " < " + quote(in) + " > " + quote(dir.path() + "/stdout.txt") + " 2> " +
         quote(dir.path() + "/stderr.txt");
  int raw = std::system(cmd.c_str());
  Outcome r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = hftest::readFile(dir.path() + "/stdout.txt");
  r.err = hftest::readFile(dir.path() + "/stderr.txt");
  return r;
}

std::string corpusPath() { return hftest::sourceDir() + "/corpus/mini.mg"; }

std::string mockRegistry(const hftest::TempDir& dir, const std::string& table) {
  std::string t = dir.write("table", table);
  return dir.write("provers.conf", "[prover mock]\npath = " + std::string(HF_MOCK_PROVER) +
                                       "\nargs = --table " + t +
                                       " --name mock {file} {timeout}\ndialect = th0\n");
}

std::size_t countFiles(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file() ? 1 : 0;
  return n;
}

}  // namespace

TEST(Cli, CheckCorpus) {
  hftest::TempDir dir;
  Outcome r = cli(dir, {"check", corpusPath()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("diagnostics: 0"), std::string::npos) << r.out;
}

TEST(Cli, CheckReportsLocatedDiagnostics) {
  hftest::TempDir dir;
  std::string bad = dir.write("bad.mg", "Theorem t : forall A:prop, A -> A.\nlet A. exact A.\nQed.\n");
  Outcome r = cli(dir, {"check", bad});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find(bad + ":2:"), std::string::npos) << r.err;
}

TEST(Cli, RequireXmProofRejectsTrustedXm) {
  hftest::TempDir dir;
  EXPECT_EQ(basis::hasCheckedXm(basis::bootstrap()), false);
  Outcome r = cli(dir, {"check", corpusPath(), "--require-xm-proof"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("no checked proof of xm"), std::string::npos) << r.err;
}

TEST(Cli, BushyWritesOneFilePerTacticSite) {
  hftest::TempDir dir;
  Outcome r = cli(dir, {"bushy", corpusPath(), "-o", dir.path() + "/p", "--jobs", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(countFiles(dir.path() + "/p"), hftest::countTacticSites(hftest::miniCorpus()));
  EXPECT_TRUE(fs::exists(dir.path() + "/p/bushy_and_5Fassoc_1.p"));
  EXPECT_GT(countFiles(dir.path() + "/p/fof"), 0u);
}

TEST(Cli, SolveMinimizeReport) {
  auto dev = script::elaborate(basis::bootstrap(), hftest::miniCorpus());
  std::vector<hammer::Candidate> cs = hammer::genBushy(dev).candidates;
  std::string table;
  std::vector<driver::RunResult> expected;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool solved = i % 5 != 4;
    table += cs[i].id + (solved ? " Theorem\n" : " GaveUp\n");
    driver::RunResult r;
    r.problemId = cs[i].id;
    r.proverName = "mock";
    r.szs = solved ? driver::Szs::Theorem : driver::Szs::GaveUp;
    expected.push_back(r);
  }

  hftest::TempDir dir;
  std::string reg = mockRegistry(dir, table);
  std::string probs = dir.path() + "/p";
  ASSERT_EQ(cli(dir, {"bushy", corpusPath(), "-o", probs}).status, 0);
  Outcome solve = cli(dir, {"solve", probs, "--registry", reg, "--timeout", "10", "--jobs", "8"});
  ASSERT_EQ(solve.status, 0) << solve.err;
  std::string solvedLine =
      "mock: " + std::to_string(cs.size() - cs.size() / 5) + "/" + std::to_string(cs.size());
  EXPECT_NE(solve.out.find(solvedLine), std::string::npos) << solve.out;

  std::string min = dir.path() + "/min.mg";
  Outcome m = cli(dir, {"minimize", corpusPath(), "--results", probs + "/results.jsonl", "-o", min});
  ASSERT_EQ(m.status, 0) << m.err;

  // The same plan computed in process from the same verdicts.
  hammer::applyResults(cs, expected);
  hammer::ReplacementPlan plan = hammer::selectMaximal(cs, dev.source);
  EXPECT_EQ(hftest::readFile(min), hammer::rewriteWithAby(dev.source, plan, cs));
  EXPECT_EQ(cli(dir, {"check", min}).status, 0);

  Outcome rep = cli(dir, {"report", probs + "/results.jsonl", "--mode", "bushy", "--original",
                      corpusPath(), "--rewritten", min, "--json"});
  ASSERT_EQ(rep.status, 0) << rep.err;
  auto j = nlohmann::json::parse(rep.out);
  EXPECT_EQ(j["total"], cs.size());
  EXPECT_EQ(j["text"]["originalChars"], dev.source.size());
}

TEST(Cli, ReconstructExitStatusSeparatesCompleteFromHoley) {
  hftest::TempDir dir;
  std::string src = hftest::readFile(hftest::sourceDir() + "/tests/fixtures/ordinal.mg");
  const std::string from = "{ exact ordinal_ordsucc alpha Ha. }";
  std::size_t at = src.find(from);
  ASSERT_NE(at, std::string::npos);
  src.replace(at, from.size(), "{ aby ordinal_ordsucc Ha. }");
  std::string script = dir.write("o.mg", src);
  ASSERT_EQ(cli(dir, {"aby", script, "-o", dir.path() + "/a"}).status, 0);
  std::string problem = dir.path() + "/a/aby_ordinal_5Fordsucc_5Fordsucc_1.p";
  ASSERT_TRUE(fs::exists(problem));
  std::string offset = std::to_string(src.find("aby ordinal_ordsucc"));
  std::string fx = hftest::sourceDir() + "/tests/fixtures/";

  Outcome one = cli(dir, {"reconstruct", fx + "ordinal_one_step.dk", "--problem", problem, "--goal-at",
                      offset, "--script", script});
  EXPECT_EQ(one.status, 0) << one.out << one.err;
  EXPECT_NE(one.out.find("steps: 1, holes: 0, checked: 1 (complete)"), std::string::npos) << one.out;

  Outcome two = cli(dir, {"reconstruct", fx + "ordinal_two_step.dk", "--problem", problem, "--goal-at",
                      offset, "--script", script, "--json"});
  EXPECT_EQ(two.status, 0) << two.err;
  auto j = nlohmann::json::parse(two.out);
  EXPECT_EQ(j["steps"], 2);
  EXPECT_EQ(j["holes"], 0);
  EXPECT_EQ(j["spliced"], true);

  Outcome clausal = cli(dir, {"reconstruct", fx + "ordinal_clausal.dk", "--problem", problem,
                          "--goal-at", offset, "--script", script});
  EXPECT_EQ(clausal.status, 2);
  EXPECT_NE(clausal.out.find("unjustified clausification"), std::string::npos) << clausal.out;

  Outcome none = cli(dir, {"reconstruct", fx + "ordinal_ordsucc_excerpt.dk", "--problem", problem,
                       "--goal-at", offset, "--script", script});
  EXPECT_EQ(none.status, 1);
  EXPECT_NE(none.err.find("NoFalsumStep"), std::string::npos) << none.err;
}

TEST(Cli, ServeStdio) {
  hftest::TempDir dir;
  std::string reg = mockRegistry(dir, "* Theorem\n");
  nlohmann::json open{{"id", 1}, {"method", "open"}, {"params", {{"text", hftest::miniCorpus()}}}};
  nlohmann::json check{{"id", 2}, {"method", "checkPrefix"}, {"params", {{"session", "s1"}}}};
  Outcome r = cli(dir, {"serve", "--stdio", "--registry", reg}, open.dump() + "\n" + check.dump() + "\n");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(nlohmann::json::parse(first)["result"]["session"], "s1");
  EXPECT_TRUE(nlohmann::json::parse(second)["result"]["diagnostics"].empty());
}

TEST(Cli, UsageErrors) {
  hftest::TempDir dir;
  EXPECT_NE(cli(dir, {}).status, 0);
  EXPECT_NE(cli(dir, {"serve"}).status, 0);
  EXPECT_NE(cli(dir, {"serve", "--stdio", "--ws", "1"}).status, 0);
  EXPECT_NE(cli(dir, {"report", "x.jsonl", "--mode", "other"}).status, 0);
  EXPECT_EQ(cli(dir, {"check", dir.path() + "/missing.mg"}).status, 1);
}
