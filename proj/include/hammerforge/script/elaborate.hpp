// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hammerforge/kernel/kernel.hpp"
#include "hammerforge/script/ast.hpp"

namespace hammerforge::script {

/// A proof state: typed variables, named hypotheses, conclusion.
struct GoalState {
  kernel::Context ctx;
  kernel::Term conclusion;
};

/// `name : type` lines for variables and hypotheses, a rule, the conclusion.
std::string renderGoal(const GoalState& g);

/// One record per tactic, in source order.
struct TraceEntry {
  Tactic::Kind kind;
  Span span;        // the tactic's own text
  GoalState goal;   // live at span.begin
  int depth = 0;    // block nesting
  /// let/assume/exact/apply/rewrite/claim; aby and bullets are not sites.
  bool site = false;
  /// Tactic start to the completion of the goal it acts on.
  Span siteSpan;
  /// Dependencies of that goal's subproof, in first-use order. `defs` also
  /// covers definitions occurring in the goal and in the used premises.
  std::vector<std::string> facts;
  std::vector<std::string> hyps;
  std::vector<std::string> defs;
  std::optional<kernel::ProofTerm> subproof;

  /// Facts then local hypotheses: the argument list of a replacing `aby`.
  std::vector<std::string> abyDeps() const;
};

struct TheoremResult {
  std::string name;
  Span span;
  Span proofSpan;
  kernel::Term prop;
  std::size_t sigIndex = 0;
  std::optional<kernel::ProofTerm> proof;  // empty when elaboration failed
  std::vector<TraceEntry> trace;           // up to the failing tactic when elaboration failed
  std::vector<kernel::HoleObligation> holes;
};

struct Diagnostic {
  Span span;
  ErrorCode code;
  std::string message;
};

/// A checked script on top of a base signature.
struct Development {
  std::string source;
  Script script;
  kernel::Signature sig;        // base entries followed by the script's items
  std::size_t baseSize = 0;
  std::optional<std::size_t> frontier;  // index of `xm`, if present
  std::vector<TheoremResult> theorems;  // script theorems in source order
  std::vector<Diagnostic> diagnostics;

  const TheoremResult* theorem(const std::string& name) const;
  /// The theorem whose text contains `offset`.
  const TheoremResult* theoremAt(std::size_t offset) const;
  bool ok() const { return diagnostics.empty(); }
};

struct ElaborateOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  /// Stop the statement pass at the first item starting at or after this offset.
  std::size_t limit = static_cast<std::size_t>(-1);
};

/// Parses and elaborates `source`. Statements are processed in order; proofs
/// are elaborated in parallel against their prefix signature. Errors become
/// diagnostics (a syntax error yields a development with no items).
Development elaborate(const kernel::Signature& base, std::string source,
                      const ElaborateOptions& opts = {});

/// Runs the tactics of one theorem against `sig` (which must not yet contain
/// it). Throws the first tactic error, leaving the trace up to the failing
/// tactic in `partial` when given.
TheoremResult elaborateTheorem(const kernel::Signature& sig, const Item& item,
                               std::vector<TraceEntry>* partial = nullptr);

/// Elaborates a term / proposition under `ctx`.
std::pair<kernel::Term, kernel::Type> elabTerm(const kernel::Signature& sig,
                                               const kernel::Context& ctx, const Expr& e,
                                               const std::optional<kernel::Type>& expected = {});
kernel::Term elabProp(const kernel::Signature& sig, const kernel::Context& ctx, const Expr& e);

/// Elaborates a proof expression against `expected`.
kernel::ProofTerm elabProof(const kernel::Signature& sig, const kernel::Context& ctx,
                            const Expr& e, const kernel::Term& expected);

struct RewriteResult {
  GoalState goal;       // the rewritten goal
  kernel::Term motive;  // λz. conclusion with the occurrence abstracted
  kernel::Term from, to;
  kernel::Type type;
};

/// Replaces the n-th occurrence (pre-order, left to right, on the beta-normal
/// conclusion) of the equation's left side (right side if `reversed`) by the
/// other side. Throws NotAnEquation, OccurrenceOutOfRange, UnknownName.
RewriteResult rewriteAt(const kernel::Signature& sig, const GoalState& goal,
                        const std::string& eqName, std::size_t n, bool reversed);

}  // namespace hammerforge::script
