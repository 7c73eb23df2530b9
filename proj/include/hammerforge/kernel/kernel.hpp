// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hammerforge/kernel/proof.hpp"
#include "hammerforge/kernel/signature.hpp"
#include "hammerforge/kernel/term.hpp"

namespace hammerforge::kernel {

/// Typed variables and named hypotheses of a proof state. Later bindings
/// shadow earlier ones on lookup.
struct Context {
  std::vector<std::pair<std::string, Type>> vars;
  std::vector<std::pair<std::string, Term>> hyps;

  const Type* varType(const std::string& name) const;
  const Term* hypProp(const std::string& name) const;
  bool hasName(const std::string& name) const;
};

/// Unique simple type of `t` under `ctx`. Throws UnknownConst, TypeMismatch
/// or NonPropQuantBody.
Type typecheck(const Signature& sig, const Context& ctx, const Term& t);

/// Beta-normal, eta-contracted form; constants in `unfold` are replaced by
/// their definientia. Throws UnknownConst for an unfold name that is not a Def.
Term normalize(const Signature& sig, const Term& t, const std::set<std::string>& unfold = {});
Term betaEta(const Term& t);

/// Unfolds the head constant of `t` once (if it is a Def) and renormalizes.
std::optional<Term> unfoldHead(const Signature& sig, const Term& t);
/// Beta-eta normalize, then delta-unfold the head until `t` is an Imp/All or
/// its head is not a definition.
Term whnfDelta(const Signature& sig, const Term& t);

/// Conversion: beta-eta always, delta lazily when heads differ.
bool convertible(const Signature& sig, const Term& a, const Term& b);

/// Proof obligation left by an AbyHole.
struct HoleObligation {
  std::string problemId;
  std::vector<std::string> deps;
  Context ctx;
  Term prop;
};

struct CheckReport {
  Term proved;  // the claimed proposition
  std::vector<HoleObligation> holes;
};

/// Infers the proposition proved by `d`; AbyHoles need an expected prop and
/// are rejected here.
Term inferProof(const Signature& sig, const Context& ctx, const ProofTerm& d);

/// Checks that `d` proves `claimed`. Throws UnknownHyp, UnknownTheorem,
/// PropMismatch or IllTypedInstantiation.
CheckReport checkProof(const Signature& sig, const Context& ctx, const ProofTerm& d,
                       const Term& claimed);

/// Metavariable name used while matching; never a legal script identifier.
std::string metavarName(std::size_t i);

struct Metavar {
  std::string name;
  Type type;
};
using Substitution = std::vector<std::pair<std::string, Term>>;

/// First-order syntactic matching of `pattern` (metavariables appear as FVars
/// named by `metavars`) against `goal`, on beta-normal forms. A metavariable
/// applied to arguments never matches. Returns nullopt for NoMatch.
std::optional<Substitution> matchConclusion(const Signature& sig,
                                            const std::vector<Metavar>& metavars,
                                            const Term& pattern, const Term& goal);

Term applySubstitution(const Term& t, const Substitution& s);

}  // namespace hammerforge::kernel
