// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hammerforge/kernel/type.hpp"

namespace hammerforge::kernel {

/// Locally nameless higher-order term.
///
/// Bound variables are de Bruijn indices (`BVar`); goal/context variables are
/// named (`FVar`). Binders keep their display name only as an annotation, so
/// structural equality of two terms is alpha-equivalence.
class Term {
 public:
  enum class Kind : std::uint8_t { Const, BVar, FVar, App, Lam, Imp, All };

  static Term constant(std::string name);
  static Term bvar(std::uint32_t index);
  static Term fvar(std::string name);
  static Term app(Term fn, Term arg);
  static Term app(Term fn, const std::vector<Term>& args);
  static Term lam(std::string hint, Type binderType, Term body);
  static Term imp(Term antecedent, Term consequent);
  static Term all(std::string hint, Type binderType, Term body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  /// Const/FVar name, or the binder's display hint for Lam/All.
  const std::string& name() const;
  std::uint32_t index() const;
  /// Binder type of Lam/All.
  const Type& binderType() const;

  /// App: fn/arg. Imp: antecedent/consequent. Lam/All: body() only.
  const Term& fn() const;
  const Term& arg() const;
  const Term& antecedent() const;
  const Term& consequent() const;
  const Term& body() const;

  /// One more than the largest loose de Bruijn index (0 when closed).
  std::uint32_t looseBound() const;
  bool hasFVars() const;
  std::size_t hash() const;
  std::size_t size() const;

  bool sameNode(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  std::uint32_t index = 0;
  std::unique_ptr<Type> type;
  std::unique_ptr<Term> lhs;
  std::unique_ptr<Term> rhs;
  std::uint32_t looseBound = 0;
  bool hasFVars = false;
  std::size_t hash = 0;
  std::size_t size = 1;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline std::uint32_t Term::index() const { return node_->index; }
inline const Type& Term::binderType() const { return *node_->type; }
inline const Term& Term::fn() const { return *node_->lhs; }
inline const Term& Term::arg() const { return *node_->rhs; }
inline const Term& Term::antecedent() const { return *node_->lhs; }
inline const Term& Term::consequent() const { return *node_->rhs; }
inline const Term& Term::body() const { return *node_->lhs; }
inline std::uint32_t Term::looseBound() const { return node_->looseBound; }
inline bool Term::hasFVars() const { return node_->hasFVars; }
inline std::size_t Term::hash() const { return node_->hash; }
inline std::size_t Term::size() const { return node_->size; }

/// Structural identity up to bound-variable naming.
bool alphaEq(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct TermAlphaEq {
  bool operator()(const Term& a, const Term& b) const { return alphaEq(a, b); }
};

/// Shift loose indices >= cutoff by `amount`.
Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff = 0);
/// Substitute `value` for BVar 0 in `body` (the body of a binder) and lower
/// the remaining loose indices.
Term instantiate(const Term& body, const Term& value);
/// Replace every FVar `name` by the bound variable of a new outer binder.
Term abstractFVar(const Term& t, const std::string& name);
/// Replace every FVar `name` by `value` (value must be closed w.r.t. bvars).
Term substFVar(const Term& t, const std::string& name, const Term& value);
/// True when BVar `index` (relative to t's top) occurs loose in t.
bool hasLooseBVar(const Term& t, std::uint32_t index);

/// Application spine: head and arguments in order.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine(const Term& t);

/// Visit every Const name (pre-order, left to right).
void forEachConst(const Term& t, const std::function<void(const std::string&)>& f);
void forEachFVar(const Term& t, const std::function<void(const std::string&)>& f);
bool occursFVar(const Term& t, const std::string& name);

}  // namespace hammerforge::kernel
