// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/kernel.hpp"

#include <algorithm>
#include <unordered_map>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/print.hpp"

namespace hammerforge::kernel {

const Type* Context::varType(const std::string& name) const {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

const Term* Context::hypProp(const std::string& name) const {
  for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

bool Context::hasName(const std::string& name) const {
  return varType(name) != nullptr || hypProp(name) != nullptr;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

class TypeChecker {
 public:
  TypeChecker(const Signature& sig, const Context& ctx) : sig_(sig), ctx_(ctx) {}

  Type infer(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Const: {
        auto ty = sig_.constType(t.name());
        if (!ty) throw Error(ErrorCode::UnknownConst, "unknown constant '" + t.name() + "'");
        return *ty;
      }
      case Term::Kind::BVar:
        if (t.index() >= bound_.size()) {
          throw Error(ErrorCode::TypeMismatch, "dangling bound variable");
        }
        return bound_[bound_.size() - 1 - t.index()];
      case Term::Kind::FVar: {
        const Type* ty = ctx_.varType(t.name());
        if (ty == nullptr) throw Error(ErrorCode::UnknownConst, "unknown variable '" + t.name() + "'");
        return *ty;
      }
      case Term::Kind::App: {
        Type f = infer(t.fn());
        if (!f.isArrow()) {
          throw Error(ErrorCode::TypeMismatch,
                      "applying a non-function of type " + f.str());
        }
        Type a = infer(t.arg());
        if (a != f.domain()) {
          throw Error(ErrorCode::TypeMismatch,
                      "argument type mismatch: expected " + f.domain().str() + ", got " + a.str());
        }
        return f.codomain();
      }
      case Term::Kind::Lam: {
        bound_.push_back(t.binderType());
        Type b = infer(t.body());
        bound_.pop_back();
        return Type::arrow(t.binderType(), b);
      }
      case Term::Kind::Imp: {
        requireProp(t.antecedent());
        requireProp(t.consequent());
        return Type::prop();
      }
      case Term::Kind::All: {
        bound_.push_back(t.binderType());
        requireProp(t.body());
        bound_.pop_back();
        return Type::prop();
      }
    }
    throw Error(ErrorCode::TypeMismatch, "malformed term");
  }

 private:
  void requireProp(const Term& t) {
    Type ty = infer(t);
    if (!ty.isProp()) {
      throw Error(ErrorCode::NonPropQuantBody,
                  "expected a proposition, got a term of type " + ty.str());
    }
  }

  const Signature& sig_;
  const Context& ctx_;
  std::vector<Type> bound_;
};

class Normalizer {
 public:
  Normalizer(const Signature* sig, const std::set<std::string>& unfold)
      : sig_(sig), unfold_(unfold) {}

  Term nf(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Const: {
        if (unfold_.count(t.name()) == 0) return t;
        auto it = unfolded_.find(t.name());
        if (it != unfolded_.end()) return it->second;
        Term v = nf(*sig_->def(t.name())->definiens);
        unfolded_.emplace(t.name(), v);
        return v;
      }
      case Term::Kind::BVar:
      case Term::Kind::FVar: return t;
      case Term::Kind::App: {
        Term f = nf(t.fn());
        Term a = nf(t.arg());
        if (f.is(Term::Kind::Lam)) return nf(instantiate(f.body(), a));
        if (f.sameNode(t.fn()) && a.sameNode(t.arg())) return t;
        return Term::app(std::move(f), std::move(a));
      }
      case Term::Kind::Lam: {
        Term b = nf(t.body());
        // eta: λx. g x  ~>  g   when x is not free in g
        if (b.is(Term::Kind::App) && b.arg().is(Term::Kind::BVar) && b.arg().index() == 0 &&
            !hasLooseBVar(b.fn(), 0)) {
          return instantiate(b.fn(), Term::bvar(0));  // lowers the loose indices of g
        }
        if (b.sameNode(t.body())) return t;
        return Term::lam(t.name(), t.binderType(), std::move(b));
      }
      case Term::Kind::Imp: {
        Term a = nf(t.antecedent());
        Term c = nf(t.consequent());
        if (a.sameNode(t.antecedent()) && c.sameNode(t.consequent())) return t;
        return Term::imp(std::move(a), std::move(c));
      }
      case Term::Kind::All: {
        Term b = nf(t.body());
        if (b.sameNode(t.body())) return t;
        return Term::all(t.name(), t.binderType(), std::move(b));
      }
    }
    return t;
  }

 private:
  const Signature* sig_;
  const std::set<std::string>& unfold_;
  std::unordered_map<std::string, Term> unfolded_;
};

}  // namespace

Type typecheck(const Signature& sig, const Context& ctx, const Term& t) {
  return TypeChecker(sig, ctx).infer(t);
}

Term normalize(const Signature& sig, const Term& t, const std::set<std::string>& unfold) {
  for (const auto& n : unfold) {
    if (sig.def(n) == nullptr) {
      throw Error(ErrorCode::UnknownConst, "'" + n + "' is not a definition");
    }
  }
  return Normalizer(&sig, unfold).nf(t);
}

Term betaEta(const Term& t) {
  static const std::set<std::string> kNone;
  return Normalizer(nullptr, kNone).nf(t);
}

std::optional<Term> unfoldHead(const Signature& sig, const Term& t) {
  Spine sp = spine(t);
  if (!sp.head.is(Term::Kind::Const)) return std::nullopt;
  const Entry* d = sig.def(sp.head.name());
  if (d == nullptr) return std::nullopt;
  return betaEta(Term::app(*d->definiens, sp.args));
}

Term whnfDelta(const Signature& sig, const Term& t) {
  Term cur = betaEta(t);
  while (!cur.is(Term::Kind::Imp) && !cur.is(Term::Kind::All)) {
    auto next = unfoldHead(sig, cur);
    if (!next) break;
    cur = std::move(*next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Conversion

namespace {

std::optional<std::size_t> unfoldableHeight(const Signature& sig, const Term& t) {
  if (t.is(Term::Kind::Imp) || t.is(Term::Kind::All) || t.is(Term::Kind::Lam)) return std::nullopt;
  Spine sp = spine(t);
  if (!sp.head.is(Term::Kind::Const) || sig.def(sp.head.name()) == nullptr) return std::nullopt;
  return sig.height(sp.head.name());
}

bool convNormal(const Signature& sig, const Term& a, const Term& b) {
  if (alphaEq(a, b)) return true;
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
      case Term::Kind::Lam:
      case Term::Kind::All:
        if (a.binderType() == b.binderType() && convNormal(sig, a.body(), b.body())) return true;
        break;
      case Term::Kind::Imp:
        if (convNormal(sig, a.antecedent(), b.antecedent()) &&
            convNormal(sig, a.consequent(), b.consequent())) {
          return true;
        }
        break;
      case Term::Kind::App: {
        Spine sa = spine(a), sb = spine(b);
        if (alphaEq(sa.head, sb.head) && sa.args.size() == sb.args.size()) {
          bool all = true;
          for (std::size_t i = 0; i < sa.args.size() && all; ++i) {
            all = convNormal(sig, sa.args[i], sb.args[i]);
          }
          if (all) return true;
        }
        break;
      }
      default: break;
    }
  }
  auto ha = unfoldableHeight(sig, a);
  auto hb = unfoldableHeight(sig, b);
  if (!ha && !hb) return false;
  if (ha && (!hb || *ha >= *hb)) {
    Term a2 = *unfoldHead(sig, a);
    if (hb && *ha == *hb) return convNormal(sig, a2, *unfoldHead(sig, b));
    return convNormal(sig, a2, b);
  }
  return convNormal(sig, a, *unfoldHead(sig, b));
}

}  // namespace

bool convertible(const Signature& sig, const Term& a, const Term& b) {
  return convNormal(sig, betaEta(a), betaEta(b));
}

// ---------------------------------------------------------------------------
// Proof checking

namespace {

std::string freshVar(const Context& ctx, const std::string& base) {
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (ctx.varType(cand) == nullptr) return cand;
  }
}

class ProofChecker {
 public:
  explicit ProofChecker(const Signature& sig) : sig_(sig) {}

  Term infer(const Context& ctx, const ProofTerm& d) {
    using K = ProofTerm::Kind;
    switch (d.kind()) {
      case K::Hyp: {
        const Term* p = ctx.hypProp(d.name());
        if (p == nullptr) throw Error(ErrorCode::UnknownHyp, "unknown hypothesis '" + d.name() + "'");
        return *p;
      }
      case K::Known: {
        auto p = sig_.factProp(d.name());
        if (!p) throw Error(ErrorCode::UnknownTheorem, "unknown theorem '" + d.name() + "'");
        return *p;
      }
      case K::TApp: {
        Term p = whnfDelta(sig_, infer(ctx, d.head()));
        if (!p.is(Term::Kind::All)) {
          throw Error(ErrorCode::IllTypedInstantiation,
                      "instantiating a non-universal proposition " + printTerm(p));
        }
        Type ty = typeOfInstance(ctx, d.term());
        if (ty != p.binderType()) {
          throw Error(ErrorCode::IllTypedInstantiation,
                      "instance " + printTerm(d.term()) + " has type " + ty.str() +
                          ", expected " + p.binderType().str());
        }
        return betaEta(instantiate(p.body(), d.term()));
      }
      case K::PApp: {
        Term p = whnfDelta(sig_, infer(ctx, d.head()));
        if (!p.is(Term::Kind::Imp)) {
          throw Error(ErrorCode::PropMismatch,
                      "applying a proof of non-implication " + printTerm(p));
        }
        check(ctx, d.argProof(), p.antecedent());
        return p.consequent();
      }
      case K::TLam: {
        auto [inner, var] = bindVar(ctx, d);
        Term b = infer(inner, var.second);
        return Term::all(d.name(), d.type(), abstractFVar(b, var.first));
      }
      case K::PLam: {
        requireProp(ctx, d.term());
        Context inner = ctx;
        inner.hyps.emplace_back(d.name(), d.term());
        return Term::imp(d.term(), infer(inner, d.body()));
      }
      case K::AbyHole:
        throw Error(ErrorCode::PropMismatch,
                    "cannot infer the proposition of aby hole '" + d.name() + "'");
    }
    throw Error(ErrorCode::PropMismatch, "malformed proof term");
  }

  void check(const Context& ctx, const ProofTerm& d, const Term& expected) {
    using K = ProofTerm::Kind;
    switch (d.kind()) {
      case K::AbyHole:
        holes_.push_back(HoleObligation{d.name(), d.deps(), ctx, betaEta(expected)});
        return;
      case K::TLam: {
        Term e = whnfDelta(sig_, expected);
        if (e.is(Term::Kind::All) && e.binderType() == d.type()) {
          auto [inner, var] = bindVar(ctx, d);
          check(inner, var.second, instantiate(e.body(), Term::fvar(var.first)));
          return;
        }
        break;
      }
      case K::PLam: {
        Term e = whnfDelta(sig_, expected);
        if (e.is(Term::Kind::Imp)) {
          requireProp(ctx, d.term());
          if (!convertible(sig_, d.term(), e.antecedent())) {
            throw Error(ErrorCode::PropMismatch,
                        "hypothesis '" + d.name() + "' annotated with " + printTerm(d.term()) +
                            " but the goal assumes " + printTerm(e.antecedent()));
          }
          Context inner = ctx;
          inner.hyps.emplace_back(d.name(), d.term());
          check(inner, d.body(), e.consequent());
          return;
        }
        break;
      }
      case K::PApp: {
        if (d.head().kind() == K::PLam) {
          // (λh:A. body) arg, as produced by `claim`: the body is checked
          // against the goal, so it may contain holes.
          const ProofTerm& lam = d.head();
          requireProp(ctx, lam.term());
          check(ctx, d.argProof(), lam.term());
          Context inner = ctx;
          inner.hyps.emplace_back(lam.name(), lam.term());
          check(inner, lam.body(), expected);
          return;
        }
        Term p = whnfDelta(sig_, infer(ctx, d.head()));
        if (!p.is(Term::Kind::Imp)) {
          throw Error(ErrorCode::PropMismatch,
                      "applying a proof of non-implication " + printTerm(p));
        }
        check(ctx, d.argProof(), p.antecedent());
        requireConv(p.consequent(), expected);
        return;
      }
      default: break;
    }
    requireConv(infer(ctx, d), expected);
  }

  std::vector<HoleObligation> takeHoles() { return std::move(holes_); }

 private:
  Type typeOfInstance(const Context& ctx, const Term& t) {
    try {
      return typecheck(sig_, ctx, t);
    } catch (const Error& e) {
      throw Error(ErrorCode::IllTypedInstantiation, std::string("ill-typed instance: ") + e.what());
    }
  }

  void requireProp(const Context& ctx, const Term& t) {
    Type ty = typeOfInstance(ctx, t);
    if (!ty.isProp()) {
      throw Error(ErrorCode::IllTypedInstantiation, "hypothesis annotation is not a proposition");
    }
  }

  void requireConv(const Term& got, const Term& expected) {
    if (!convertible(sig_, got, expected)) {
      throw Error(ErrorCode::PropMismatch,
                  "proves " + printTerm(betaEta(got)) + " but " + printTerm(betaEta(expected)) +
                      " was expected");
    }
  }

  // Pushes the TLam variable, renaming it if it would capture an outer one.
  std::pair<Context, std::pair<std::string, ProofTerm>> bindVar(const Context& ctx,
                                                                const ProofTerm& d) {
    std::string name = d.name();
    ProofTerm body = d.body();
    if (ctx.varType(name) != nullptr) {
      std::string fresh = freshVar(ctx, name);
      body = renameTermVar(body, name, fresh);
      name = fresh;
    }
    Context inner = ctx;
    inner.vars.emplace_back(name, d.type());
    return {std::move(inner), {name, std::move(body)}};
  }

  const Signature& sig_;
  std::vector<HoleObligation> holes_;
};

}  // namespace

Term inferProof(const Signature& sig, const Context& ctx, const ProofTerm& d) {
  return ProofChecker(sig).infer(ctx, d);
}

CheckReport checkProof(const Signature& sig, const Context& ctx, const ProofTerm& d,
                       const Term& claimed) {
  ProofChecker checker(sig);
  checker.check(ctx, d, claimed);
  return CheckReport{claimed, checker.takeHoles()};
}

// ---------------------------------------------------------------------------
// Matching

std::string metavarName(std::size_t i) { return "?m" + std::to_string(i); }

namespace {

class Matcher {
 public:
  explicit Matcher(const std::vector<Metavar>& metavars) : metavars_(metavars) {}

  bool isMeta(const Term& t) const {
    if (!t.is(Term::Kind::FVar)) return false;
    return std::any_of(metavars_.begin(), metavars_.end(),
                       [&](const Metavar& m) { return m.name == t.name(); });
  }

  bool match(const Term& p, const Term& g) {
    if (isMeta(p)) {
      if (g.looseBound() > 0) return false;  // would capture a bound variable
      auto it = std::find_if(subst_.begin(), subst_.end(),
                             [&](const auto& kv) { return kv.first == p.name(); });
      if (it != subst_.end()) return alphaEq(it->second, g);
      subst_.emplace_back(p.name(), g);
      return true;
    }
    if (p.is(Term::Kind::App) && isMeta(spine(p).head)) return false;
    if (p.kind() != g.kind()) return false;
    switch (p.kind()) {
      case Term::Kind::Const:
      case Term::Kind::FVar: return p.name() == g.name();
      case Term::Kind::BVar: return p.index() == g.index();
      case Term::Kind::App: return match(p.fn(), g.fn()) && match(p.arg(), g.arg());
      case Term::Kind::Imp:
        return match(p.antecedent(), g.antecedent()) && match(p.consequent(), g.consequent());
      case Term::Kind::Lam:
      case Term::Kind::All: return p.binderType() == g.binderType() && match(p.body(), g.body());
    }
    return false;
  }

  Substitution result() const {
    Substitution out;
    for (const auto& m : metavars_) {
      auto it = std::find_if(subst_.begin(), subst_.end(),
                             [&](const auto& kv) { return kv.first == m.name; });
      if (it != subst_.end()) out.push_back(*it);
    }
    return out;
  }

 private:
  const std::vector<Metavar>& metavars_;
  Substitution subst_;
};

}  // namespace

std::optional<Substitution> matchConclusion(const Signature&, const std::vector<Metavar>& metavars,
                                            const Term& pattern, const Term& goal) {
  Matcher m(metavars);
  if (!m.match(betaEta(pattern), betaEta(goal))) return std::nullopt;
  return m.result();
}

Term applySubstitution(const Term& t, const Substitution& s) {
  Term out = t;
  for (const auto& [name, value] : s) out = substFVar(out, name, value);
  return out;
}

}  // namespace hammerforge::kernel
