// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/kernel.hpp"
#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::driver {

enum class Dialect { Th0, Fof };
std::string_view dialectName(Dialect d);
Dialect parseDialect(std::string_view name);

enum class Szs { Theorem, CounterSatisfiable, Timeout, GaveUp, Error, Unknown };
std::string_view szsName(Szs s);
Szs parseSzsName(std::string_view name);

/// An external prover. `args` is a token template; `{file}` (exactly once)
/// and `{timeout}` (whole seconds) are substituted per run.
struct ProverSpec {
  std::string name;
  std::string path;
  std::vector<std::string> args;
  Dialect dialect = Dialect::Th0;
  /// Also scan bare `axiom_…` identifiers, not just `file(…, name)` sources.
  bool bareNames = true;

  /// Throws std::invalid_argument when the template breaks the invariant.
  void validate() const;
  std::vector<std::string> argv(const std::string& file, unsigned timeoutSec) const;
};

struct Schedule {
  std::string name;
  std::vector<std::pair<ProverSpec, unsigned>> slices;  // prover, seconds
  unsigned budget = 0;                                  // total seconds
  void validate() const;
};

/// Stanza file:
///   [prover NAME]            path = …, args = …, dialect = th0|fof, names = bare|sources
///   [schedule NAME]          budget = SECONDS, slice = PROVER SECONDS (repeated)
/// `#` starts a comment. Relative paths are resolved against the file's directory.
struct Registry {
  std::vector<ProverSpec> provers;
  std::vector<Schedule> schedules;

  const ProverSpec& prover(std::string_view name) const;
  const Schedule& schedule(std::string_view name) const;
  /// The named schedule, or one slice of `timeout` seconds per prover.
  Schedule scheduleOrAll(const std::optional<std::string>& name, unsigned timeout) const;
};

Registry parseRegistry(std::string_view text, const std::string& baseDir = ".");
Registry loadRegistry(const std::string& path);
/// `explicitPath` if given, else $HAMMERFORGE_PROVERS, else the shipped default.
std::string registryPath(const std::optional<std::string>& explicitPath);

struct RunResult {
  std::string problemId;
  std::string proverName;
  Dialect dialect = Dialect::Th0;
  Szs szs = Szs::Unknown;
  double wallTime = 0;
  std::vector<std::string> usedAxioms;  // script names, bundle axiom order
  std::optional<std::string> proofText;
  bool incomplete = false;  // the axiom list could not be read completely
  std::vector<std::string> warnings;
  int exitCode = 0;
  bool killed = false;
};

/// Grace period added to the time limit before the process group is killed.
inline constexpr double kGraceSeconds = 2.0;

/// First `SZS status` verdict in `out`, with comment markers and spacing tolerated.
std::optional<Szs> parseSzs(std::string_view out);
/// Text between `SZS output start` and `SZS output end`, if present.
std::optional<std::string> extractProof(std::string_view out);

/// Runs `spec` on `problemFile`. Blocks; never exceeds timeout + grace.
/// Throws SpawnError when the executable cannot be started, IoError when the
/// problem file is unreadable.
RunResult runProver(const ProverSpec& spec, const std::string& problemFile, unsigned timeoutSec);

struct UsedAxioms {
  std::vector<std::string> names;  // script names, bundle axiom order
  bool incomplete = false;
  std::vector<std::string> warnings;
};

/// Reads `file(…, name)` annotations (and bare `axiom_…` identifiers unless
/// `sourcesOnly`) and maps them to bundle axiom sources. Unknown names are
/// dropped with a warning; an empty or unreadable proof is flagged incomplete.
UsedAxioms parseUsedAxioms(std::string_view proofText, Dialect dialect,
                           const tptp::ProblemBundle& bundle, bool sourcesOnly = false);

/// Fills usedAxioms/incomplete/warnings of a Theorem result from its proof.
void attachUsedAxioms(RunResult& r, const ProverSpec& spec, const tptp::ProblemBundle& bundle);

/// Problem texts of one bundle in both dialects.
struct ProblemTexts {
  std::string th0;
  std::optional<std::string> fof;  // empty when the bundle is not first-order
  std::string fofSkip;             // the NotFirstOrder reason
};
ProblemTexts emitProblem(const kernel::Signature& sig, const tptp::ProblemBundle& b);

struct Attempt {
  std::string prover;
  Dialect dialect = Dialect::Th0;
  unsigned slice = 0;
  bool skipped = false;
  std::string note;  // skip reason or error message
  std::optional<RunResult> result;
};

struct ScheduleOutcome {
  std::optional<RunResult> success;
  std::vector<Attempt> attempts;
  /// One line per attempt: prover, dialect, verdict or note, time.
  std::string summary() const;
};

/// Writes the problem into `workDir` and runs the slices in order until one
/// proves it or the budget is spent. Errors of a slice are recorded, not thrown.
ScheduleOutcome runSchedule(const tptp::ProblemBundle& bundle, const ProblemTexts& texts,
                            const Schedule& schedule, const std::string& workDir);

/// One prover run of a batch.
struct BatchTask {
  const ProverSpec* prover = nullptr;
  std::string file;
  unsigned timeout = 60;
  const tptp::ProblemBundle* bundle = nullptr;  // for used-axiom recovery
};

/// Runs the tasks with at most `jobs` concurrent subprocesses (0: logical
/// cores). `onResult` is called under a lock, in completion order.
/// Spawn errors become Error results.
void runBatch(const std::vector<BatchTask>& tasks, unsigned jobs,
              const std::function<void(std::size_t, const RunResult&)>& onResult);

// ---- JSON lines -----------------------------------------------------------

std::string toJsonLine(const RunResult& r);
RunResult fromJsonLine(std::string_view line);
void appendResults(const std::string& path, const std::vector<RunResult>& results);
/// Later records for the same (problemId, prover) replace earlier ones.
std::vector<RunResult> loadResults(const std::string& path);

}  // namespace hammerforge::driver
