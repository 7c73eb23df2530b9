// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/kernel.hpp"
#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::reconstruct {

// ---- Dedukti syntax -------------------------------------------------------

/// Untyped Dedukti term. `App` keeps the head in args[0]; `Lam` (`x : A => b`)
/// and `Pi` (`x : A -> B`, or `A -> B` with an empty name) keep the domain in
/// args[0] and the body in args[1].
struct DkTerm {
  enum class Kind { Ident, App, Lam, Pi };
  Kind kind = Kind::Ident;
  std::string name;
  std::vector<DkTerm> args;

  static DkTerm ident(std::string name);
  static DkTerm app(std::vector<DkTerm> args);
  static DkTerm binder(Kind kind, std::string var, DkTerm domain, DkTerm body);
};

std::string printDk(const DkTerm& t);

struct DkDecl {
  enum class Kind { Declared, Defined };
  Kind kind = Kind::Declared;
  std::string name;  // unquoted
  DkTerm type;
  std::optional<DkTerm> body;
  Span span;

  /// The proposition of a `Prf P` type.
  const DkTerm* proved() const;
};

/// Parses `name : T.`, `def name : T := b.` and `thm name : T := b.` entries
/// with `(; ;)` comments. Throws SyntaxError with line:column; names must be
/// unique.
std::vector<DkDecl> parseDedukti(std::string_view text);

// ---- names ----------------------------------------------------------------

enum class Role { Fact, Hyp, Def, NegatedConjecture, Unmatched, Step };
std::string_view roleName(Role r);

struct Recovered {
  std::string dkName;
  Role role = Role::Unmatched;
  std::string source;  // script name for Fact/Hyp/Def
};

struct NameMapping {
  std::vector<Recovered> entries;  // one per declaration, in order
  std::vector<std::string> unmatched;

  const Recovered* find(std::string_view dkName) const;
  /// Script names of the cited facts and hypotheses, in declaration order.
  std::vector<std::string> sources() const;
  std::optional<std::string> negatedConjecture() const;
};

/// Declared entries: role prefixes and ordinals are stripped and the name is
/// matched against the bundle; a `Prf (not P)` entry with P alpha-equivalent
/// to the conjecture is the negated conclusion. Unmatched names are
/// collected. Defined entries are steps.
NameMapping recoverNames(const std::vector<DkDecl>& decls, const tptp::ProblemBundle& bundle);

/// Translates a Dedukti proposition. Goal variables become free variables
/// when `openLocals`, constants otherwise (the bundle's closed form).
/// Throws SyntaxError for anything outside the emitted fragment.
kernel::Term translateProp(const DkTerm& t, const tptp::ProblemBundle& bundle, bool openLocals);

// ---- skeletons ------------------------------------------------------------

struct Goal {
  kernel::Context ctx;
  kernel::Term conclusion = kernel::Term::constant("True");
};

struct Step {
  std::string name;  // hypothesis name inside the skeleton
  kernel::Term prop = kernel::Term::constant("True");
  std::optional<kernel::ProofTerm> evidence;  // nullopt: a hole
  std::string hole;                           // reason when evidence is missing
  bool checked = false;
};

struct Skeleton {
  Goal goal;
  std::string wrapperLemma = "dneg";
  std::string negHyp;  // hypothesis carrying the negated conclusion
  /// Clausal premises that are not bundle formulas; always holes.
  std::vector<Step> premises;
  std::vector<Step> steps;  // one per Defined entry, up to the final one
  std::size_t final = 0;    // index into steps of the step proving False

  /// `dneg C (fun nc => premises and steps as nested claims, ending in the
  /// final step)`. Holes become AbyHoles named `<holePrefix>#<n>`.
  kernel::ProofTerm proof(const std::string& holePrefix = "reconstruct") const;
  std::size_t holes() const;
};

inline constexpr std::string_view kUnjustified = "unjustified clausification";

/// Builds the double-negation skeleton for `goal` under `sig`. Throws
/// NoFalsumStep when no Defined entry proves False.
Skeleton scaffold(const kernel::Signature& sig, const Goal& goal, const std::vector<DkDecl>& decls,
                  const NameMapping& mapping, const tptp::ProblemBundle& bundle);

struct Audit {
  std::size_t steps = 0;
  std::size_t holes = 0;
  std::size_t checked = 0;

  bool complete() const { return holes == 0 && checked == steps; }
  std::string render() const;
  std::string json() const;
  friend bool operator==(const Audit&, const Audit&) = default;
};

Audit auditSkeleton(const Skeleton& sk);

/// Replaces AbyHole `holeId` of `proof` by the skeleton and checks the result
/// against `claimed`. Returns the remaining holes; throws when the hole is
/// absent or the result does not check.
kernel::CheckReport splice(const kernel::Signature& sig, const kernel::ProofTerm& proof,
                           const kernel::Term& claimed, const std::string& holeId,
                           const Skeleton& sk);

}  // namespace hammerforge::reconstruct
