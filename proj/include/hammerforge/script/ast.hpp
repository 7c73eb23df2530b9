// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/type.hpp"

namespace hammerforge::script {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// `x y : T` inside a binder; the type is optional in the surface syntax.
struct BinderGroup {
  std::vector<std::string> names;
  std::optional<kernel::Type> type;
};

/// Surface expression. The same syntax denotes terms (statements,
/// definitions, `apply` arguments) and proof terms (`exact`).
struct Expr {
  enum class Kind { Ident, App, Fun, Forall, Exists, Imp, And, Or, Iff, Not, Eq, In };

  Kind kind;
  Span span;
  std::string name;              // Ident
  std::vector<ExprPtr> args;     // App: head then arguments; operators: operands; binders: body
  std::vector<BinderGroup> binders;

  bool isBinder() const { return kind == Kind::Fun || kind == Kind::Forall || kind == Kind::Exists; }
};

struct Tactic;
using Block = std::vector<Tactic>;

struct Tactic {
  enum class Kind { Let, Assume, Exact, Apply, Rewrite, Claim, Aby, Bullet };

  Kind kind;
  Span span;
  std::string name;                  // Let var, Assume hyp, Apply head, Rewrite eq, Claim label, Bullet marker
  std::optional<kernel::Type> type;  // Let annotation
  ExprPtr expr;                      // Assume annotation, Exact proof, Claim prop
  std::vector<ExprPtr> args;         // Apply arguments
  std::size_t occurrence = 1;        // Rewrite `at n`
  bool explicitOccurrence = false;
  bool reversed = false;             // Rewrite `<-`
  std::vector<std::string> deps;     // Aby
  Block block;                       // Bullet body, Claim body when written as `{ ... }`
  bool hasBlock = false;
};

struct Item {
  enum class Kind { Parameter, Axiom, Definition, Theorem };

  Kind kind;
  Span span;
  std::string name;
  std::optional<kernel::Type> type;  // Parameter, Definition (optional)
  ExprPtr body;                      // Axiom/Theorem prop, Definition definiens
  Block proof;                       // Theorem
  Span proofSpan;                    // first tactic .. end of `Qed.`
};

struct Script {
  std::vector<Item> items;
};

const char* tacticKeyword(Tactic::Kind k);

}  // namespace hammerforge::script
