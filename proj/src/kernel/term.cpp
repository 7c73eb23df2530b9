// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/term.hpp"

#include <algorithm>

namespace hammerforge::kernel {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t typeHash(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Prop: return 0x51;
    case Type::Kind::Set: return 0x73;
    case Type::Kind::Arrow: return mix(mix(0xa1, typeHash(t.domain())), typeHash(t.codomain()));
  }
  return 0;
}

}  // namespace

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::bvar(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::BVar;
  n->index = index;
  n->looseBound = index + 1;
  n->hash = mix(2, index);
  return Term(std::move(n));
}

Term Term::fvar(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::FVar;
  n->hasFVars = true;
  n->hash = mix(3, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->looseBound = std::max(fn.looseBound(), arg.looseBound());
  n->hasFVars = fn.hasFVars() || arg.hasFVars();
  n->hash = mix(mix(4, fn.hash()), arg.hash());
  n->size = 1 + fn.size() + arg.size();
  n->lhs = std::make_unique<Term>(std::move(fn));
  n->rhs = std::make_unique<Term>(std::move(arg));
  return Term(std::move(n));
}

Term Term::app(Term fn, const std::vector<Term>& args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term Term::lam(std::string hint, Type binderType, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->name = std::move(hint);
  n->looseBound = body.looseBound() > 0 ? body.looseBound() - 1 : 0;
  n->hasFVars = body.hasFVars();
  n->hash = mix(mix(5, typeHash(binderType)), body.hash());
  n->size = 1 + body.size();
  n->type = std::make_unique<Type>(std::move(binderType));
  n->lhs = std::make_unique<Term>(std::move(body));
  return Term(std::move(n));
}

Term Term::imp(Term antecedent, Term consequent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Imp;
  n->looseBound = std::max(antecedent.looseBound(), consequent.looseBound());
  n->hasFVars = antecedent.hasFVars() || consequent.hasFVars();
  n->hash = mix(mix(6, antecedent.hash()), consequent.hash());
  n->size = 1 + antecedent.size() + consequent.size();
  n->lhs = std::make_unique<Term>(std::move(antecedent));
  n->rhs = std::make_unique<Term>(std::move(consequent));
  return Term(std::move(n));
}

Term Term::all(std::string hint, Type binderType, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::All;
  n->name = std::move(hint);
  n->looseBound = body.looseBound() > 0 ? body.looseBound() - 1 : 0;
  n->hasFVars = body.hasFVars();
  n->hash = mix(mix(7, typeHash(binderType)), body.hash());
  n->size = 1 + body.size();
  n->type = std::make_unique<Type>(std::move(binderType));
  n->lhs = std::make_unique<Term>(std::move(body));
  return Term(std::move(n));
}

bool alphaEq(const Term& a, const Term& b) {
  if (a.sameNode(b)) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash()) return false;
  switch (a.kind()) {
    case Term::Kind::Const:
    case Term::Kind::FVar: return a.name() == b.name();
    case Term::Kind::BVar: return a.index() == b.index();
    case Term::Kind::App: return alphaEq(a.fn(), b.fn()) && alphaEq(a.arg(), b.arg());
    case Term::Kind::Imp:
      return alphaEq(a.antecedent(), b.antecedent()) && alphaEq(a.consequent(), b.consequent());
    case Term::Kind::Lam:
    case Term::Kind::All: return a.binderType() == b.binderType() && alphaEq(a.body(), b.body());
  }
  return false;
}

namespace {

Term liftRec(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (t.looseBound() <= cutoff) return t;
  switch (t.kind()) {
    case Term::Kind::BVar: return Term::bvar(t.index() + amount);
    case Term::Kind::App:
      return Term::app(liftRec(t.fn(), amount, cutoff), liftRec(t.arg(), amount, cutoff));
    case Term::Kind::Imp:
      return Term::imp(liftRec(t.antecedent(), amount, cutoff),
                       liftRec(t.consequent(), amount, cutoff));
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binderType(), liftRec(t.body(), amount, cutoff + 1));
    case Term::Kind::All:
      return Term::all(t.name(), t.binderType(), liftRec(t.body(), amount, cutoff + 1));
    default: return t;
  }
}

Term instantiateRec(const Term& t, const Term& value, std::uint32_t depth) {
  if (t.looseBound() <= depth) return t;
  switch (t.kind()) {
    case Term::Kind::BVar:
      if (t.index() == depth) return lift(value, depth, 0);
      return Term::bvar(t.index() - 1);  // index > depth here
    case Term::Kind::App:
      return Term::app(instantiateRec(t.fn(), value, depth), instantiateRec(t.arg(), value, depth));
    case Term::Kind::Imp:
      return Term::imp(instantiateRec(t.antecedent(), value, depth),
                       instantiateRec(t.consequent(), value, depth));
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binderType(), instantiateRec(t.body(), value, depth + 1));
    case Term::Kind::All:
      return Term::all(t.name(), t.binderType(), instantiateRec(t.body(), value, depth + 1));
    default: return t;
  }
}

Term abstractRec(const Term& t, const std::string& name, std::uint32_t depth) {
  if (!t.hasFVars()) return lift(t, 1, depth);
  switch (t.kind()) {
    case Term::Kind::FVar: return t.name() == name ? Term::bvar(depth) : t;
    case Term::Kind::BVar: return t.index() >= depth ? Term::bvar(t.index() + 1) : t;
    case Term::Kind::App:
      return Term::app(abstractRec(t.fn(), name, depth), abstractRec(t.arg(), name, depth));
    case Term::Kind::Imp:
      return Term::imp(abstractRec(t.antecedent(), name, depth),
                       abstractRec(t.consequent(), name, depth));
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binderType(), abstractRec(t.body(), name, depth + 1));
    case Term::Kind::All:
      return Term::all(t.name(), t.binderType(), abstractRec(t.body(), name, depth + 1));
    default: return t;
  }
}

Term substFVarRec(const Term& t, const std::string& name, const Term& value, std::uint32_t depth) {
  if (!t.hasFVars()) return t;
  switch (t.kind()) {
    case Term::Kind::FVar: return t.name() == name ? lift(value, depth, 0) : t;
    case Term::Kind::App:
      return Term::app(substFVarRec(t.fn(), name, value, depth),
                       substFVarRec(t.arg(), name, value, depth));
    case Term::Kind::Imp:
      return Term::imp(substFVarRec(t.antecedent(), name, value, depth),
                       substFVarRec(t.consequent(), name, value, depth));
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binderType(), substFVarRec(t.body(), name, value, depth + 1));
    case Term::Kind::All:
      return Term::all(t.name(), t.binderType(), substFVarRec(t.body(), name, value, depth + 1));
    default: return t;
  }
}

}  // namespace

Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  return liftRec(t, amount, cutoff);
}

Term instantiate(const Term& body, const Term& value) {
  return instantiateRec(body, value, 0);
}

Term abstractFVar(const Term& t, const std::string& name) {
  return abstractRec(t, name, 0);
}

Term substFVar(const Term& t, const std::string& name, const Term& value) {
  return substFVarRec(t, name, value, 0);
}

bool hasLooseBVar(const Term& t, std::uint32_t index) {
  if (t.looseBound() <= index) return false;
  switch (t.kind()) {
    case Term::Kind::BVar: return t.index() == index;
    case Term::Kind::App: return hasLooseBVar(t.fn(), index) || hasLooseBVar(t.arg(), index);
    case Term::Kind::Imp:
      return hasLooseBVar(t.antecedent(), index) || hasLooseBVar(t.consequent(), index);
    case Term::Kind::Lam:
    case Term::Kind::All: return hasLooseBVar(t.body(), index + 1);
    default: return false;
  }
}

Spine spine(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is(Term::Kind::App)) {
    args.push_back(cur->arg());
    cur = &cur->fn();
  }
  std::reverse(args.begin(), args.end());
  return Spine{*cur, std::move(args)};
}

void forEachConst(const Term& t, const std::function<void(const std::string&)>& f) {
  switch (t.kind()) {
    case Term::Kind::Const: f(t.name()); break;
    case Term::Kind::App:
      forEachConst(t.fn(), f);
      forEachConst(t.arg(), f);
      break;
    case Term::Kind::Imp:
      forEachConst(t.antecedent(), f);
      forEachConst(t.consequent(), f);
      break;
    case Term::Kind::Lam:
    case Term::Kind::All: forEachConst(t.body(), f); break;
    default: break;
  }
}

void forEachFVar(const Term& t, const std::function<void(const std::string&)>& f) {
  if (!t.hasFVars()) return;
  switch (t.kind()) {
    case Term::Kind::FVar: f(t.name()); break;
    case Term::Kind::App:
      forEachFVar(t.fn(), f);
      forEachFVar(t.arg(), f);
      break;
    case Term::Kind::Imp:
      forEachFVar(t.antecedent(), f);
      forEachFVar(t.consequent(), f);
      break;
    case Term::Kind::Lam:
    case Term::Kind::All: forEachFVar(t.body(), f); break;
    default: break;
  }
}

bool occursFVar(const Term& t, const std::string& name) {
  bool found = false;
  forEachFVar(t, [&](const std::string& n) { found = found || n == name; });
  return found;
}

}  // namespace hammerforge::kernel
