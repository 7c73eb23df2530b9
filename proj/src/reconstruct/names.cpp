// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>

#include "translate.hpp"

namespace hammerforge::reconstruct {

namespace detail {

using kernel::Term;
using kernel::Type;

void outsideFragment(const DkTerm& t, const std::string& why) {
  throw Error(ErrorCode::SyntaxError, why + ": " + printDk(t));
}

Type Translator::type(const DkTerm& t) const {
  if (t.kind == DkTerm::Kind::Pi && t.name.empty()) {
    return Type::arrow(type(t.args[0]), type(t.args[1]));
  }
  const DkTerm* base = &t;
  if (t.kind == DkTerm::Kind::App && t.args.size() == 2 && t.args[0].kind == DkTerm::Kind::Ident &&
      t.args[0].name == "El") {
    base = &t.args[1];
  }
  if (base->kind == DkTerm::Kind::Ident) {
    if (base->name == "iota") return Type::set();
    if (base->name == "o" || base->name == "prop" || base->name == "bool") return Type::prop();
  }
  outsideFragment(t, "unsupported type");
}

Term Translator::binder(const DkTerm& quant, const DkTerm& lam, bool lambda) {
  if (lam.kind != DkTerm::Kind::Lam) outsideFragment(quant, "quantifier without a binder");
  Type ty = type(lam.args[0]);
  bound_.push_back(lam.name);
  Term body = term(lam.args[1]);
  bound_.pop_back();
  return lambda ? Term::lam(lam.name, ty, body) : Term::all(lam.name, ty, body);
}

Term Translator::head(const DkTerm& t, std::size_t arity) {
  const std::string& n = t.name;
  for (std::size_t i = bound_.size(); i-- > 0;) {
    if (bound_[i] == n) return Term::bvar(static_cast<std::uint32_t>(bound_.size() - 1 - i));
  }
  for (auto it = named.rbegin(); it != named.rend(); ++it) {
    if (it->first == n) return Term::fvar(n);
  }
  if (arity == 0 && n == "false") return Term::constant("False");
  if (arity == 0 && n == "true") return Term::constant("True");
  if (arity == 1 && n == "not") return Term::constant("not");
  if (arity == 2 && (n == "and" || n == "or" || n == "iff")) return Term::constant(n);
  if (auto name = bundle_.recoverSymbol(n)) {
    for (const auto& s : bundle_.symbols) {
      if (s.name == *name && s.local && openLocals_) return Term::fvar(*name);
    }
    return Term::constant(*name);
  }
  outsideFragment(t, "unknown symbol");
}

Term Translator::term(const DkTerm& t) {
  switch (t.kind) {
    case DkTerm::Kind::Ident:
      return head(t, 0);
    case DkTerm::Kind::Lam:
      return binder(t, t, true);
    case DkTerm::Kind::Pi:
      outsideFragment(t, "product in a proposition");
    case DkTerm::Kind::App:
      break;
  }
  const DkTerm& h = t.args[0];
  std::size_t arity = t.args.size() - 1;
  if (h.kind == DkTerm::Kind::Ident) {
    if (h.name == "imp" && arity == 2) return Term::imp(term(t.args[1]), term(t.args[2]));
    if (h.name == "forall" && arity == 2) {
      type(t.args[1]);
      return binder(t, t.args[2], false);
    }
    if (h.name == "exists" && arity == 2) {
      Type ty = type(t.args[1]);
      std::string ex = ty == Type::set() ? "ex" : ty == Type::prop() ? "ex_o" : "";
      if (ex.empty()) outsideFragment(t, "existential over a function type");
      return Term::app(Term::constant(ex), binder(t, t.args[2], true));
    }
    if (h.name == "eq" && arity == 3) {
      return Term::app(Term::constant(kernel::equalsName(type(t.args[1]))),
                       {term(t.args[2]), term(t.args[3])});
    }
    if (h.name == "Prf" || h.name == "El") outsideFragment(t, "type former inside a proposition");
  }
  Term fn = h.kind == DkTerm::Kind::Ident ? head(h, arity) : term(h);
  std::vector<Term> args;
  for (std::size_t i = 1; i < t.args.size(); ++i) args.push_back(term(t.args[i]));
  return Term::app(fn, args);
}

}  // namespace detail

std::string_view roleName(Role r) {
  switch (r) {
    case Role::Fact: return "Fact";
    case Role::Hyp: return "Hyp";
    case Role::Def: return "Def";
    case Role::NegatedConjecture: return "NegatedConjecture";
    case Role::Unmatched: return "Unmatched";
    case Role::Step: return "Step";
  }
  return "Unmatched";
}

const Recovered* NameMapping::find(std::string_view dkName) const {
  for (const auto& e : entries) {
    if (e.dkName == dkName) return &e;
  }
  return nullptr;
}

std::vector<std::string> NameMapping::sources() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if ((e.role == Role::Fact || e.role == Role::Hyp) &&
        std::find(out.begin(), out.end(), e.source) == out.end()) {
      out.push_back(e.source);
    }
  }
  return out;
}

std::optional<std::string> NameMapping::negatedConjecture() const {
  for (const auto& e : entries) {
    if (e.role == Role::NegatedConjecture) return e.dkName;
  }
  return std::nullopt;
}

kernel::Term translateProp(const DkTerm& t, const tptp::ProblemBundle& bundle, bool openLocals) {
  return kernel::betaEta(detail::Translator(bundle, openLocals).term(t));
}

namespace {

const tptp::Formula* formulaFor(const tptp::ProblemBundle& b, const std::string& name) {
  for (const auto& f : b.axioms) {
    if (f.name == name) return &f;
  }
  for (const auto& reading : tptp::readFormulaName(name)) {
    for (const auto& cand : reading.candidates) {
      for (const auto& f : b.axioms) {
        if (f.origin == reading.origin && f.source == cand) return &f;
      }
    }
  }
  return nullptr;
}

bool negatesConjecture(const DkDecl& d, const tptp::ProblemBundle& b) {
  const DkTerm* p = d.proved();
  if (p == nullptr || p->kind != DkTerm::Kind::App || p->args.size() != 2 ||
      p->args[0].kind != DkTerm::Kind::Ident || p->args[0].name != "not") {
    return false;
  }
  try {
    return kernel::alphaEq(translateProp(p->args[1], b, false), kernel::betaEta(b.conjecture.prop));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

NameMapping recoverNames(const std::vector<DkDecl>& decls, const tptp::ProblemBundle& bundle) {
  NameMapping m;
  for (const auto& d : decls) {
    Recovered r;
    r.dkName = d.name;
    if (d.kind == DkDecl::Kind::Defined) {
      r.role = Role::Step;
    } else if (negatesConjecture(d, bundle)) {
      r.role = Role::NegatedConjecture;
    } else if (const tptp::Formula* f = formulaFor(bundle, d.name)) {
      r.source = f->source;
      r.role = f->origin == tptp::Origin::Fact ? Role::Fact
               : f->origin == tptp::Origin::Hyp ? Role::Hyp
                                                : Role::Def;
    } else {
      m.unmatched.push_back(d.name);
    }
    m.entries.push_back(std::move(r));
  }
  return m;
}

}  // namespace hammerforge::reconstruct
