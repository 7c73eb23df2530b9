// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hammerforge/driver/driver.hpp"
#include "hammerforge/script/elaborate.hpp"
#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::hammer {

enum class Status { Unsolved, Solved, Failed };
std::string_view statusName(Status s);

/// One problem per tactic site (or per aby hole in Aby mode).
struct Candidate {
  std::string id;       // `<mode>_<mangled theorem>_<seq>`, also the file stem
  std::string theorem;
  std::size_t seq = 0;  // 1-based within the theorem
  Span span;            // tactic start to the completion of its goal
  tptp::ProblemBundle bundle;
  std::vector<std::string> abyDeps;  // facts in first-use order, then hypotheses
  Status status = Status::Unsolved;
  std::string solvedBy;
};

struct Generation {
  std::vector<Candidate> candidates;  // theorem order, then site order
  std::size_t skipped = 0;            // sites without a dependency trace
  std::size_t gated = 0;              // sites at or before the classical frontier
};

/// Premise-selected problems: the trace dependencies of each site's subproof.
/// Throws NoXm when the development has no `xm`, OverlapWithoutNesting when
/// the spans of a theorem do not form a forest.
Generation genBushy(const script::Development& dev, unsigned jobs = 0);
/// Every prior fact and non-logical definition plus all local hypotheses.
Generation genChainy(const script::Development& dev, unsigned jobs = 0);
/// One problem per AbyHole, with exactly the named dependencies.
Generation genAby(const script::Development& dev);

/// Throws OverlapWithoutNesting unless every pair of spans is nested or disjoint.
void assertForest(const std::vector<Span>& spans, const std::string& where);

// ---- selection and rewriting ----------------------------------------------

struct Overrides {
  std::set<std::string> pin;      // chosen whenever possible, even if not Solved
  std::set<std::string> exclude;  // never chosen
};

struct ReplacementPlan {
  std::vector<std::size_t> chosen;  // candidate indices, by span start
  std::size_t superseded = 0;       // Solved candidates inside a chosen span
  Overrides overrides;
  std::size_t sourceHash = 0;
  std::size_t sourceSize = 0;
  std::size_t replacedChars = 0;    // total size of the chosen spans
};

/// The Solved candidates maximal under span containment. Unsolved ancestors
/// never block Solved descendants.
ReplacementPlan selectMaximal(const std::vector<Candidate>& candidates, const std::string& source,
                              const Overrides& overrides = {});

/// `aby d1 … dn.`
std::string abyText(const std::vector<std::string>& deps);

/// Replaces every chosen span by its aby call. Throws SpanDrift when `source`
/// is not the text the plan was made for.
std::string rewriteWithAby(const std::string& source, const ReplacementPlan& plan,
                           const std::vector<Candidate>& candidates);

/// Statuses from result records: Solved when any prover proved the id,
/// Failed when all recorded attempts failed, Unsolved without records.
void applyResults(std::vector<Candidate>& candidates, const std::vector<driver::RunResult>& results);

// ---- aby verification -----------------------------------------------------

struct HoleVerdict {
  std::string holeId;  // the kernel hole id, `theorem#n`
  std::string problemId;
  Span span;
  bool justified = false;
  std::string prover;
  driver::Dialect dialect = driver::Dialect::Th0;
  driver::ScheduleOutcome outcome;
};

struct VerifyReport {
  std::vector<HoleVerdict> holes;
  std::vector<std::string> unjustified() const;
  std::string summary() const;
};

/// Runs the schedule on every hole: TH0 always, FOF when first-order.
/// A hole is justified when any slice proves it.
VerifyReport verifyAby(const script::Development& dev, const driver::Schedule& schedule,
                       const std::string& workDir, unsigned jobs = 0);

// ---- reports --------------------------------------------------------------

/// solved/total in tenths of a percent, rounded half up.
std::uint64_t percentTenths(std::uint64_t solved, std::uint64_t total);
/// `78.3`
std::string formatPercent(std::uint64_t solved, std::uint64_t total);
/// `46%`: whole percent, rounded half up.
std::string formatRatio(std::uint64_t part, std::uint64_t whole);

struct ProverCount {
  std::string prover;
  std::uint64_t solved = 0;
};

struct TextAccounting {
  std::uint64_t originalChars = 0;
  std::uint64_t rewrittenChars = 0;
};

struct ProofStats {
  std::size_t proofs = 0;
  std::size_t singleAby = 0;   // bodies that are one aby call
  std::size_t multiCall = 0;   // bodies with two or more aby calls
  std::size_t withCalls = 0;   // bodies with at least one aby call
  std::size_t calls = 0;
};

struct CoverageReport {
  std::string mode;
  std::uint64_t total = 0;
  std::vector<ProverCount> provers;
  std::uint64_t unionSolved = 0;
  std::optional<TextAccounting> text;
  std::optional<ProofStats> proofs;

  /// Aligned text table.
  std::string render() const;
  /// Machine-readable record (one JSON object).
  std::string json() const;
};

/// Counts over the result records whose problem id carries the mode prefix;
/// `total` defaults to the number of distinct such ids.
CoverageReport report(const std::vector<driver::RunResult>& results, tptp::Mode mode,
                      std::optional<std::uint64_t> total = std::nullopt);

/// Aby calls per theorem body of a development.
ProofStats proofStats(const script::Development& dev);

}  // namespace hammerforge::hammer
