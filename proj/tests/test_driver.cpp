// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/driver/driver.hpp"
#include "oracles.hpp"

using namespace hammerforge;
using namespace hammerforge::driver;

namespace {

double seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// The ordinal fixture problem written to `dir`.
std::string ordinalProblem(const hftest::TempDir& dir) {
  return dir.write("ordinal.p", tptp::toTh0(basis::bootstrap(), hftest::ordinalBundle()));
}

}  // namespace

TEST(Szs, StatusLineVariants) {
  EXPECT_EQ(parseSzs("% SZS status Theorem for p1\n"), Szs::Theorem);
  EXPECT_EQ(parseSzs("# SZS status Timeout for p1"), Szs::Timeout);
  EXPECT_EQ(parseSzs("  %%   SZS   status\tGaveUp"), Szs::GaveUp);
  EXPECT_EQ(parseSzs("SZS status: CounterSatisfiable"), Szs::CounterSatisfiable);
  EXPECT_EQ(parseSzs("% SZS status Unsatisfiable for p1"), Szs::Theorem);
  EXPECT_EQ(parseSzs("% SZS status ResourceOut"), Szs::Timeout);
  EXPECT_EQ(parseSzs("% SZS status InputError"), Szs::Error);
  EXPECT_EQ(parseSzs("% SZS status Whatever"), Szs::Unknown);
  EXPECT_EQ(parseSzs("no verdict here\n"), std::nullopt);
  EXPECT_EQ(parseSzs("x\n% SZS status GaveUp\n% SZS status Theorem\n"), Szs::GaveUp);
}

TEST(Szs, ProofBlock) {
  std::string out =
      "% SZS status Theorem for p\n% SZS output start Proof for p\nline1\nline2\n"
      "% SZS output end Proof for p\ntrailer\n";
  EXPECT_EQ(extractProof(out), "line1\nline2\n");
  EXPECT_EQ(extractProof("% SZS status Theorem\n"), std::nullopt);
}

TEST(Registry, Stanzas) {
  Registry r = parseRegistry(R"(
# comment
[prover a]
path = bin/a
args = -t {timeout} {file}
dialect = th0
[prover b]
path = b
args = {file}
dialect = fof
names = sources
[schedule s]
budget = 10
slice = a 4
slice = b 6
)",
                             "/opt/reg");
  ASSERT_EQ(r.provers.size(), 2u);
  EXPECT_EQ(r.prover("a").path, "/opt/reg/bin/a");
  EXPECT_EQ(r.prover("b").path, "b");
  EXPECT_FALSE(r.prover("b").bareNames);
  EXPECT_EQ(r.prover("a").argv("x.p", 7), (std::vector<std::string>{"/opt/reg/bin/a", "-t", "7", "x.p"}));
  const Schedule& s = r.schedule("s");
  ASSERT_EQ(s.slices.size(), 2u);
  EXPECT_EQ(s.slices[1].first.name, "b");
  EXPECT_EQ(s.budget, 10u);
  EXPECT_EQ(r.scheduleOrAll(std::nullopt, 5).slices.size(), 2u);
}

TEST(Registry, Invariants) {
  EXPECT_THROW(parseRegistry("[prover a]\npath = a\nargs = {file} {file}\n"), std::invalid_argument);
  EXPECT_THROW(parseRegistry("[prover a]\npath = a\nargs = -t 5\n"), std::invalid_argument);
  EXPECT_THROW(parseRegistry("[prover a]\npath = a\nargs = {file}\n[schedule s]\nbudget = 3\nslice = a 4\n"),
               std::invalid_argument);
  EXPECT_THROW(parseRegistry("[schedule s]\nslice = nobody 4\n"), std::invalid_argument);
  EXPECT_THROW(parseRegistry("path = a\n"), std::invalid_argument);
}

TEST(Registry, ShippedFileAndOverride) {
  Registry r = loadRegistry(registryPath(std::nullopt));
  EXPECT_GE(r.provers.size(), 2u);
  EXPECT_NO_THROW(r.schedule("sledgehammer"));
  ::setenv("HAMMERFORGE_PROVERS", "/elsewhere/provers.conf", 1);
  EXPECT_EQ(registryPath(std::nullopt), "/elsewhere/provers.conf");
  EXPECT_EQ(registryPath(std::string("x.conf")), "x.conf");
  ::unsetenv("HAMMERFORGE_PROVERS");
}

TEST(RunProver, Theorem) {
  hftest::TempDir dir;
  auto table = dir.write("t", "* Theorem axioms=ordinal_ordsucc,Ha\n");
  ProverSpec p = hftest::mockProver("m", table);
  RunResult r = runProver(p, ordinalProblem(dir), 5);
  EXPECT_EQ(r.szs, Szs::Theorem);
  EXPECT_EQ(r.problemId, hftest::ordinalBundle().problemId);
  ASSERT_TRUE(r.proofText.has_value());
  attachUsedAxioms(r, p, hftest::ordinalBundle());
  EXPECT_EQ(r.usedAxioms, (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
  EXPECT_FALSE(r.incomplete);
  EXPECT_FALSE(r.killed);
}

TEST(RunProver, TimeoutIsKilledWithinGrace) {
  hftest::TempDir dir;
  auto table = dir.write("t", "* Theorem sleep=30\n");
  auto start = std::chrono::steady_clock::now();
  RunResult r = runProver(hftest::mockProver("m", table), ordinalProblem(dir), 1);
  double took = seconds(start);
  EXPECT_EQ(r.szs, Szs::Timeout);
  EXPECT_TRUE(r.killed);
  EXPECT_NEAR(r.wallTime, 1.0 + kGraceSeconds, 0.5);
  EXPECT_LE(took, 1.0 + kGraceSeconds + 1.0);
  EXPECT_TRUE(r.usedAxioms.empty());
}

TEST(RunProver, NoVerdictAndCrash) {
  hftest::TempDir dir;
  RunResult none = runProver(hftest::mockProver("m", dir.write("t1", "* none\n")), ordinalProblem(dir), 5);
  EXPECT_EQ(none.szs, Szs::Unknown);
  EXPECT_EQ(none.exitCode, 0);
  RunResult crash = runProver(hftest::mockProver("m", dir.write("t2", "* crash\n")), ordinalProblem(dir), 5);
  EXPECT_EQ(crash.szs, Szs::Unknown);
  EXPECT_EQ(crash.exitCode, 3);
  RunResult gave = runProver(hftest::mockProver("m", dir.write("t3", "* GaveUp\n")), ordinalProblem(dir), 5);
  EXPECT_EQ(gave.szs, Szs::GaveUp);
}

TEST(RunProver, SpawnAndIoErrors) {
  hftest::TempDir dir;
  ProverSpec missing{"ghost", "/nonexistent/prover", {"{file}"}, Dialect::Th0, true};
  try {
    runProver(missing, ordinalProblem(dir), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpawnError);
  }
  try {
    runProver(hftest::mockProver("m", dir.write("t", "* Theorem\n")), dir.path() + "/absent.p", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(UsedAxioms, DeduktiExcerpt) {
  std::string text = hftest::readFile(hftest::sourceDir() + "/tests/fixtures/ordinal_ordsucc_excerpt.dk");
  UsedAxioms u = parseUsedAxioms(text, Dialect::Th0, hftest::ordinalBundle());
  EXPECT_EQ(u.names, (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
  EXPECT_FALSE(u.incomplete);
  // axiom_18 is the prover's name for the negated conjecture.
  ASSERT_EQ(u.warnings.size(), 1u);
  EXPECT_NE(u.warnings[0].find("axiom_18"), std::string::npos);
  UsedAxioms again = parseUsedAxioms(text, Dialect::Th0, hftest::ordinalBundle());
  EXPECT_EQ(again.names, u.names);
  EXPECT_EQ(again.warnings, u.warnings);
}

TEST(UsedAxioms, SourceAnnotations) {
  std::string proof =
      "thf(f1, axiom, p, file('x.p', axiom_c_Ha2)).\n"
      "fof(f2, axiom, q, file('/tmp/a,b.p', 'axiom_ordinal_5Fordsucc1')).\n"
      "thf(f3, axiom, r, file('x.p', axiom_nosuchthing4)).\n";
  UsedAxioms u = parseUsedAxioms(proof, Dialect::Fof, hftest::ordinalBundle(), true);
  EXPECT_EQ(u.names, (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
  ASSERT_EQ(u.warnings.size(), 1u);
  EXPECT_NE(u.warnings[0].find("axiom_nosuchthing4"), std::string::npos);
}

TEST(UsedAxioms, EmptyProofIsIncomplete) {
  UsedAxioms u = parseUsedAxioms("", Dialect::Th0, hftest::ordinalBundle());
  EXPECT_TRUE(u.names.empty());
  EXPECT_TRUE(u.incomplete);
  UsedAxioms v = parseUsedAxioms("some proof without names\n", Dialect::Th0, hftest::ordinalBundle());
  EXPECT_TRUE(v.incomplete);
}

TEST(Schedule, ShortCircuitsOnTheorem) {
  hftest::TempDir dir;
  Schedule s{"s", {{hftest::mockProver("fail", dir.write("t1", "* GaveUp\n")), 1},
                   {hftest::mockProver("ok", dir.write("t2", "* Theorem\n")), 1},
                   {hftest::mockProver("never", dir.write("t3", "* Theorem\n")), 1}},
             3};
  auto b = hftest::ordinalBundle();
  auto out = runSchedule(b, emitProblem(basis::bootstrap(), b), s, dir.path() + "/work");
  ASSERT_TRUE(out.success.has_value());
  EXPECT_EQ(out.success->proverName, "ok");
  EXPECT_EQ(out.attempts.size(), 2u);
  EXPECT_EQ(out.success->usedAxioms, (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
}

TEST(Schedule, ExhaustionReportsEverySlice) {
  hftest::TempDir dir;
  auto t = dir.write("t", "* Timeout\n");
  Schedule s{"s", {{hftest::mockProver("a", t), 1}, {hftest::mockProver("b", t), 2}}, 3};
  auto b = hftest::ordinalBundle();
  auto out = runSchedule(b, emitProblem(basis::bootstrap(), b), s, dir.path());
  EXPECT_FALSE(out.success.has_value());
  ASSERT_EQ(out.attempts.size(), 2u);
  for (const auto& a : out.attempts) {
    ASSERT_TRUE(a.result.has_value());
    EXPECT_EQ(a.result->szs, Szs::Timeout);
    EXPECT_GT(a.result->wallTime, 0.0);
  }
  EXPECT_NE(out.summary().find("b (th0, 2s): Timeout"), std::string::npos) << out.summary();
}

TEST(Schedule, FofSliceSkippedWhenNotFirstOrder) {
  hftest::TempDir dir;
  auto t = dir.write("t", "* Theorem\n");
  tptp::ProblemBundle b;
  b.problemId = "prop_q";
  b.theorem = "prop_q";
  b.conjecture = tptp::Formula{"conj_prop_5Fq1", "prop_q", tptp::Origin::Conjecture,
                               kernel::Term::all("p", kernel::Type::prop(),
                                                 kernel::Term::imp(kernel::Term::bvar(0),
                                                                   kernel::Term::bvar(0)))};
  Schedule s{"s", {{hftest::mockProver("fo", t, Dialect::Fof), 1}, {hftest::mockProver("ho", t), 1}}, 2};
  auto out = runSchedule(b, emitProblem(basis::bootstrap(), b), s, dir.path());
  ASSERT_EQ(out.attempts.size(), 2u);
  EXPECT_TRUE(out.attempts[0].skipped);
  EXPECT_NE(out.attempts[0].note.find("quantification at type prop"), std::string::npos);
  ASSERT_TRUE(out.success.has_value());
  EXPECT_EQ(out.success->proverName, "ho");
}

TEST(Batch, ConcurrencyCap) {
  hftest::TempDir dir;
  auto table = dir.write("t", "* GaveUp sleep=0.4\n");
  ProverSpec p = hftest::mockProver("m", table);
  std::string file = ordinalProblem(dir);
  std::vector<BatchTask> tasks(6, BatchTask{&p, file, 5, nullptr});
  std::size_t seen = 0;
  auto start = std::chrono::steady_clock::now();
  runBatch(tasks, 2, [&](std::size_t, const RunResult& r) {
    ++seen;
    EXPECT_EQ(r.szs, Szs::GaveUp);
  });
  double capped = seconds(start);
  EXPECT_EQ(seen, 6u);
  EXPECT_GE(capped, 3 * 0.4 - 0.05);  // three waves of two
  start = std::chrono::steady_clock::now();
  runBatch(tasks, 6, [](std::size_t, const RunResult&) {});
  EXPECT_LT(seconds(start), capped);
}

TEST(Batch, SpawnErrorsBecomeErrorResults) {
  ProverSpec missing{"ghost", "/nonexistent/prover", {"{file}"}, Dialect::Th0, true};
  std::vector<BatchTask> tasks{{&missing, "/nonexistent/x.p", 1, nullptr}};
  std::vector<RunResult> got;
  runBatch(tasks, 0, [&](std::size_t, const RunResult& r) { got.push_back(r); });
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].szs, Szs::Error);
  EXPECT_FALSE(got[0].warnings.empty());
}

TEST(Results, JsonLinesRoundTripAndMerge) {
  hftest::TempDir dir;
  RunResult a;
  a.problemId = "p1";
  a.proverName = "m";
  a.szs = Szs::GaveUp;
  a.wallTime = 0.25;
  RunResult b = a;
  b.szs = Szs::Theorem;
  b.usedAxioms = {"ordinal_ordsucc", "Ha"};
  b.proofText = "proof";
  RunResult c = a;
  c.problemId = "p2";
  std::string path = dir.path() + "/r.jsonl";
  appendResults(path, {a, c});
  appendResults(path, {b});
  auto rs = loadResults(path);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].problemId, "p1");
  EXPECT_EQ(rs[0].szs, Szs::Theorem);
  EXPECT_EQ(rs[0].usedAxioms, b.usedAxioms);
  EXPECT_EQ(rs[0].proofText, "proof");
  EXPECT_EQ(rs[1].problemId, "p2");
  EXPECT_EQ(toJsonLine(fromJsonLine(toJsonLine(b))), toJsonLine(b));
  EXPECT_THROW(fromJsonLine("{not json"), Error);
}

TEST(ResultsSchema, DocumentedRecordsRoundTrip) {
  std::istringstream doc(hftest::readFile(hftest::sourceDir() + "/docs/results-schema.md"));
  std::size_t records = 0;
  for (std::string line; std::getline(doc, line);) {
    if (line.rfind("{", 0) != 0) continue;
    EXPECT_EQ(driver::toJsonLine(driver::fromJsonLine(line)), line);
    ++records;
  }
  EXPECT_EQ(records, 2u);
}
