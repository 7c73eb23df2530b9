// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/script/elaborate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "hammerforge/kernel/print.hpp"
#include "hammerforge/script/parser.hpp"

namespace hammerforge::script {

using kernel::Context;
using kernel::Entry;
using kernel::ProofTerm;
using kernel::Signature;
using kernel::Term;
using kernel::Type;

std::string renderGoal(const GoalState& g) {
  std::ostringstream os;
  for (const auto& [n, t] : g.ctx.vars) os << n << " : " << t.str() << "\n";
  for (const auto& [n, p] : g.ctx.hyps) os << n << " : " << kernel::printTerm(p) << "\n";
  os << "----------\n" << kernel::printTerm(g.conclusion) << "\n";
  return os.str();
}

std::vector<std::string> TraceEntry::abyDeps() const {
  std::vector<std::string> out = facts;
  out.insert(out.end(), hyps.begin(), hyps.end());
  return out;
}

const TheoremResult* Development::theorem(const std::string& name) const {
  for (const auto& t : theorems) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const TheoremResult* Development::theoremAt(std::size_t offset) const {
  for (const auto& t : theorems) {
    if (t.span.begin <= offset && offset < t.span.end) return &t;
  }
  return nullptr;
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg, Span span) {
  throw Error(code, msg, span);
}

// Local names introduced by `fun` inside proof expressions may be renamed to
// avoid capture; `alias` maps the written name to the kernel name.
struct Scope {
  Context ctx;
  std::map<std::string, std::string> alias;

  std::string resolveVar(const std::string& n) const {
    auto it = alias.find(n);
    return it == alias.end() ? n : it->second;
  }
};

using Bound = std::vector<std::pair<std::string, Type>>;

class TermElab {
 public:
  TermElab(const Signature& sig, const Scope& scope) : sig_(sig), scope_(scope) {}

  std::pair<Term, Type> run(const Expr& e, const std::optional<Type>& expected) {
    Bound bound;
    return elab(e, bound, expected);
  }

 private:
  std::pair<Term, Type> elab(const Expr& e, Bound& bound, const std::optional<Type>& expected) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Ident: return ident(e, bound);
      case K::App: {
        auto [f, ft] = elab(*e.args[0], bound, std::nullopt);
        for (std::size_t i = 1; i < e.args.size(); ++i) {
          if (!ft.isArrow()) {
            fail(ErrorCode::TypeMismatch,
                 "'" + printExpr(*e.args[0]) + "' of type " + ft.str() + " is applied to too many arguments",
                 e.args[i]->span);
          }
          auto [a, at] = elab(*e.args[i], bound, ft.domain());
          requireType(at, ft.domain(), *e.args[i]);
          f = Term::app(f, a);
          ft = Type(ft.codomain());
        }
        return {f, ft};
      }
      case K::Fun: {
        std::optional<Type> want = expected;
        std::vector<std::pair<std::string, Type>> vars;
        for (const auto& g : e.binders) {
          for (const auto& n : g.names) {
            Type t = g.type ? *g.type : (want && want->isArrow() ? Type(want->domain()) : Type::set());
            if (want && want->isArrow()) want = Type(want->codomain());
            else want.reset();
            vars.emplace_back(n, t);
          }
        }
        for (const auto& v : vars) bound.push_back(v);
        auto [body, bt] = elab(*e.args[0], bound, want);
        bound.erase(bound.end() - static_cast<std::ptrdiff_t>(vars.size()), bound.end());
        Term t = body;
        Type ty = bt;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
          t = Term::lam(it->first, it->second, t);
          ty = Type::arrow(it->second, ty);
        }
        return {t, ty};
      }
      case K::Forall:
      case K::Exists: {
        std::vector<std::pair<std::string, Type>> vars;
        for (const auto& g : e.binders) {
          for (const auto& n : g.names) vars.emplace_back(n, g.type ? *g.type : Type::set());
        }
        for (const auto& v : vars) bound.push_back(v);
        Term body = prop(*e.args[0], bound);
        bound.erase(bound.end() - static_cast<std::ptrdiff_t>(vars.size()), bound.end());
        Term t = body;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
          if (e.kind == K::Forall) {
            t = Term::all(it->first, it->second, t);
          } else {
            t = Term::app(constant(kernel::existsName(it->second), e),
                          Term::lam(it->first, it->second, t));
          }
        }
        return {t, Type::prop()};
      }
      case K::Imp:
        return {Term::imp(prop(*e.args[0], bound), prop(*e.args[1], bound)), Type::prop()};
      case K::And:
      case K::Or:
      case K::Iff: {
        const char* c = e.kind == K::And ? "and" : e.kind == K::Or ? "or" : "iff";
        Term a = prop(*e.args[0], bound);
        Term b = prop(*e.args[1], bound);
        return {Term::app(constant(c, e), {a, b}), Type::prop()};
      }
      case K::Not: return {Term::app(constant("not", e), prop(*e.args[0], bound)), Type::prop()};
      case K::Eq: {
        auto [a, at] = elab(*e.args[0], bound, std::nullopt);
        auto [b, bt] = elab(*e.args[1], bound, at);
        requireType(bt, at, *e.args[1]);
        return {Term::app(constant(kernel::equalsName(at), e), {a, b}), Type::prop()};
      }
      case K::In: {
        auto [a, at] = elab(*e.args[0], bound, Type::set());
        requireType(at, Type::set(), *e.args[0]);
        auto [b, bt] = elab(*e.args[1], bound, Type::set());
        requireType(bt, Type::set(), *e.args[1]);
        return {Term::app(constant("In", e), {a, b}), Type::prop()};
      }
    }
    fail(ErrorCode::SyntaxError, "malformed expression", e.span);
  }

  Term prop(const Expr& e, Bound& bound) {
    auto [t, ty] = elab(e, bound, Type::prop());
    if (!ty.isProp()) {
      fail(ErrorCode::NonPropQuantBody,
           "'" + printExpr(e) + "' has type " + ty.str() + ", expected prop", e.span);
    }
    return t;
  }

  Term constant(const std::string& name, const Expr& at) {
    if (!sig_.constType(name)) {
      fail(ErrorCode::UnknownConst, "notation needs '" + name + "', which is not declared", at.span);
    }
    return Term::constant(name);
  }

  std::pair<Term, Type> ident(const Expr& e, const Bound& bound) {
    for (std::size_t i = bound.size(); i-- > 0;) {
      if (bound[i].first == e.name) {
        return {Term::bvar(static_cast<std::uint32_t>(bound.size() - 1 - i)), bound[i].second};
      }
    }
    const std::string v = scope_.resolveVar(e.name);
    if (const Type* t = scope_.ctx.varType(v)) return {Term::fvar(v), *t};
    if (auto t = sig_.constType(e.name)) return {Term::constant(e.name), *t};
    if (scope_.ctx.hypProp(e.name) != nullptr || sig_.factProp(e.name)) {
      fail(ErrorCode::UnknownName, "'" + e.name + "' names a proof, not a term", e.span);
    }
    fail(ErrorCode::UnknownConst, "unknown name '" + e.name + "'", e.span);
  }

  void requireType(const Type& got, const Type& want, const Expr& e) {
    if (got != want) {
      fail(ErrorCode::TypeMismatch,
           "'" + printExpr(e) + "' has type " + got.str() + " but " + want.str() + " was expected",
           e.span);
    }
  }

  const Signature& sig_;
  const Scope& scope_;
};

std::string freshVarName(const Signature& sig, const Context& ctx, const std::string& base) {
  auto taken = [&](const std::string& n) { return ctx.varType(n) != nullptr || sig.find(n) != nullptr; };
  if (!taken(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

class ProofElab {
 public:
  explicit ProofElab(const Signature& sig) : sig_(sig) {}

  ProofTerm check(const Scope& scope, const Expr& e, const Term& expected) {
    if (e.kind == Expr::Kind::Fun) return checkFun(scope, e, expected);
    auto [d, p] = infer(scope, e);
    if (!kernel::convertible(sig_, p, expected)) {
      fail(ErrorCode::PropMismatch,
           "'" + printExpr(e) + "' proves " + kernel::printTerm(kernel::betaEta(p)) + " but " +
               kernel::printTerm(kernel::betaEta(expected)) + " was expected",
           e.span);
    }
    return d;
  }

  std::pair<ProofTerm, Term> infer(const Scope& scope, const Expr& e) {
    if (e.kind == Expr::Kind::Ident) return head(scope, e);
    if (e.kind != Expr::Kind::App) {
      fail(ErrorCode::PropMismatch, "cannot determine what '" + printExpr(e) + "' proves", e.span);
    }
    auto [d, p] = infer(scope, *e.args[0]);
    for (std::size_t i = 1; i < e.args.size(); ++i) {
      std::tie(d, p) = applyArg(scope, d, p, *e.args[i]);
    }
    return {d, p};
  }

  std::pair<ProofTerm, Term> applyArg(const Scope& scope, const ProofTerm& d, const Term& prop,
                                      const Expr& arg) {
    Term p = kernel::whnfDelta(sig_, prop);
    if (p.is(Term::Kind::All)) {
      auto [t, ty] = TermElab(sig_, scope).run(arg, p.binderType());
      if (ty != p.binderType()) {
        fail(ErrorCode::IllTypedInstantiation,
             "'" + printExpr(arg) + "' has type " + ty.str() + " but " + p.binderType().str() +
                 " was expected",
             arg.span);
      }
      return {ProofTerm::tapp(d, t), kernel::betaEta(kernel::instantiate(p.body(), t))};
    }
    if (p.is(Term::Kind::Imp)) {
      ProofTerm a = check(scope, arg, p.antecedent());
      return {ProofTerm::papp(d, a), p.consequent()};
    }
    fail(ErrorCode::PropMismatch,
         "extra argument '" + printExpr(arg) + "': " + kernel::printTerm(p) +
             " is neither a forall nor an implication",
         arg.span);
  }

  std::pair<ProofTerm, Term> head(const Scope& scope, const Expr& e) {
    if (const Term* p = scope.ctx.hypProp(e.name)) return {ProofTerm::hyp(e.name), *p};
    if (auto p = sig_.factProp(e.name)) return {ProofTerm::known(e.name), *p};
    if (scope.ctx.varType(scope.resolveVar(e.name)) || sig_.find(e.name)) {
      fail(ErrorCode::UnknownName, "'" + e.name + "' is a term, not a proof", e.span);
    }
    fail(ErrorCode::UnknownName, "unknown hypothesis or theorem '" + e.name + "'", e.span);
  }

 private:
  ProofTerm checkFun(const Scope& outer, const Expr& e, const Term& expected) {
    struct Step {
      bool isVar;
      std::string name;
      Type type = Type::prop();
      std::optional<Term> prop;
    };
    Scope scope = outer;
    Term goal = expected;
    std::vector<Step> steps;
    for (const auto& g : e.binders) {
      for (const auto& n : g.names) {
        Term w = kernel::whnfDelta(sig_, goal);
        if (w.is(Term::Kind::All)) {
          if (g.type && *g.type != w.binderType()) {
            fail(ErrorCode::PropMismatch,
                 "binder '" + n + "' has type " + g.type->str() + " but the goal quantifies over " +
                     w.binderType().str(),
                 e.span);
          }
          std::string actual = freshVarName(sig_, scope.ctx, n);
          scope.alias[n] = actual;
          scope.ctx.vars.emplace_back(actual, w.binderType());
          goal = kernel::instantiate(w.body(), Term::fvar(actual));
          steps.push_back(Step{true, actual, w.binderType(), std::nullopt});
        } else if (w.is(Term::Kind::Imp)) {
          if (g.type) {
            fail(ErrorCode::PropMismatch, "binder '" + n + "' is typed but the goal is an implication",
                 e.span);
          }
          scope.alias.erase(n);
          scope.ctx.hyps.emplace_back(n, w.antecedent());
          goal = w.consequent();
          steps.push_back(Step{false, n, Type::prop(), w.antecedent()});
        } else {
          fail(ErrorCode::NotAForall,
               "cannot introduce '" + n + "': goal " + kernel::printTerm(w) +
                   " is neither a forall nor an implication",
               e.span);
        }
      }
    }
    ProofTerm d = check(scope, *e.args[0], goal);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      d = it->isVar ? ProofTerm::tlam(it->name, it->type, d) : ProofTerm::plam(it->name, *it->prop, d);
    }
    return d;
  }

  const Signature& sig_;
};

// ---------------------------------------------------------------------------
// Tactic engine

struct Solved {
  ProofTerm proof;
  std::size_t end;
};

struct Cursor {
  const Block* block;
  std::size_t next = 0;
  Span close;  // where an unfinished goal is reported

  bool done() const { return next >= block->size(); }
};

bool isFactName(const Signature& sig, const std::string& n) { return sig.factProp(n).has_value(); }

class Engine {
 public:
  Engine(const Signature& sig, std::string theorem)
      : sig_(sig), theorem_(std::move(theorem)), proofs_(sig) {}

  std::vector<TraceEntry> trace;

  ProofTerm run(const Item& item, const Term& prop) {
    Cursor cur{&item.proof, 0, Span{item.proofSpan.end - 4, item.proofSpan.end}};
    Solved s = solve(GoalState{Context{}, kernel::betaEta(prop)}, cur, 0);
    if (!cur.done()) excess(cur);
    return s.proof;
  }

 private:
  [[noreturn]] void excess(const Cursor& cur) {
    const Tactic& t = (*cur.block)[cur.next];
    fail(ErrorCode::NoGoal, "no goal left for this tactic", t.span);
  }

  Solved solve(const GoalState& g, Cursor& cur, int depth) {
    if (cur.done()) {
      fail(ErrorCode::OpenGoalsAtQed, "unfinished goal:\n" + renderGoal(g), cur.close);
    }
    const Tactic& t = (*cur.block)[cur.next++];
    const std::size_t idx = trace.size();
    TraceEntry entry{t.kind, t.span, g, depth, false, Span{}, {}, {}, {}, std::nullopt};
    trace.push_back(std::move(entry));
    Solved s = [&] {
      try {
        return step(t, g, cur, depth);
      } catch (const Error& e) {
        if (e.span()) throw;
        throw Error(e.code(), e.what(), t.span);
      }
    }();
    TraceEntry& te = trace[idx];
    te.site = t.kind != Tactic::Kind::Aby && t.kind != Tactic::Kind::Bullet;
    te.siteSpan = Span{t.span.begin, s.end};
    recordDeps(te, s.proof, g.ctx, g.conclusion);
    te.subproof = s.proof;
    return s;
  }

  void recordDeps(TraceEntry& te, const ProofTerm& d, const Context& ctx, const Term& goal) {
    auto names = kernel::collectNames(d, [&](const std::string& n) {
      return ctx.hypProp(n) == nullptr && isFactName(sig_, n);
    });
    te.facts = names.known;
    auto addDef = [&](const std::string& n) {
      if (sig_.def(n) != nullptr && std::find(te.defs.begin(), te.defs.end(), n) == te.defs.end()) {
        te.defs.push_back(n);
      }
    };
    for (const auto& h : names.freeHyps) {
      if (ctx.hypProp(h) != nullptr) te.hyps.push_back(h);
      else addDef(h);
    }
    for (const auto& c : names.constants) addDef(c);
    // Conversion may unfold definitions of the goal and of the premises.
    kernel::forEachConst(goal, addDef);
    for (const auto& h : te.hyps) kernel::forEachConst(*ctx.hypProp(h), addDef);
    for (const auto& f : te.facts) kernel::forEachConst(*sig_.factProp(f), addDef);
  }

  Solved solveBlock(const GoalState& g, const Tactic& t, int depth) {
    Cursor inner{&t.block, 0, t.span};
    Solved s = solve(g, inner, depth + 1);
    if (!inner.done()) excess(inner);
    return s;
  }

  void requireFresh(const Context& ctx, const std::string& n, Span at) {
    if (ctx.hasName(n) || sig_.constType(n)) {
      fail(ErrorCode::DuplicateName, "name '" + n + "' is already in use", at);
    }
  }

  Solved step(const Tactic& t, const GoalState& g, Cursor& cur, int depth) {
    switch (t.kind) {
      case Tactic::Kind::Bullet: return solveBlock(g, t, depth);
      case Tactic::Kind::Let: {
        Term w = kernel::whnfDelta(sig_, g.conclusion);
        if (!w.is(Term::Kind::All)) {
          fail(ErrorCode::NotAForall, "goal is not a forall: " + kernel::printTerm(w), t.span);
        }
        if (t.type && *t.type != w.binderType()) {
          fail(ErrorCode::TypeMismatch,
               "goal quantifies over " + w.binderType().str() + ", not " + t.type->str(), t.span);
        }
        requireFresh(g.ctx, t.name, t.span);
        GoalState child{g.ctx, kernel::betaEta(kernel::instantiate(w.body(), Term::fvar(t.name)))};
        child.ctx.vars.emplace_back(t.name, w.binderType());
        Solved s = solve(child, cur, depth);
        return {ProofTerm::tlam(t.name, w.binderType(), s.proof), s.end};
      }
      case Tactic::Kind::Assume: {
        Term w = kernel::whnfDelta(sig_, g.conclusion);
        if (!w.is(Term::Kind::Imp)) {
          fail(ErrorCode::NotAnImp, "goal is not an implication: " + kernel::printTerm(w), t.span);
        }
        Term hyp = w.antecedent();
        if (t.expr) {
          Term ann = elabProp(sig_, g.ctx, *t.expr);
          if (!kernel::convertible(sig_, ann, hyp)) {
            fail(ErrorCode::PropMismatch,
                 "annotation " + kernel::printTerm(ann) + " does not match " + kernel::printTerm(hyp),
                 t.expr->span);
          }
          hyp = kernel::betaEta(ann);
        }
        requireFresh(g.ctx, t.name, t.span);
        GoalState child{g.ctx, w.consequent()};
        child.ctx.hyps.emplace_back(t.name, hyp);
        Solved s = solve(child, cur, depth);
        return {ProofTerm::plam(t.name, hyp, s.proof), s.end};
      }
      case Tactic::Kind::Exact: {
        ProofTerm d = proofs_.check(Scope{g.ctx, {}}, *t.expr, g.conclusion);
        kernel::checkProof(sig_, g.ctx, d, g.conclusion);
        return {d, t.span.end};
      }
      case Tactic::Kind::Aby: {
        for (const auto& dep : t.deps) {
          if (!g.ctx.hasName(dep) && !sig_.find(dep)) {
            fail(ErrorCode::UnknownName, "unknown dependency '" + dep + "'", t.span);
          }
        }
        std::string id = theorem_ + "#" + std::to_string(++holes_);
        return {ProofTerm::abyHole(std::move(id), t.deps), t.span.end};
      }
      case Tactic::Kind::Claim: {
        Term p = elabProp(sig_, g.ctx, *t.expr);
        requireFresh(g.ctx, t.name, t.span);
        GoalState first{g.ctx, kernel::betaEta(p)};
        Solved s1 = t.hasBlock ? solveBlock(first, t, depth) : solve(first, cur, depth);
        GoalState rest{g.ctx, g.conclusion};
        rest.ctx.hyps.emplace_back(t.name, kernel::betaEta(p));
        Solved s2 = solve(rest, cur, depth);
        return {ProofTerm::papp(ProofTerm::plam(t.name, kernel::betaEta(p), s2.proof), s1.proof),
                s2.end};
      }
      case Tactic::Kind::Rewrite: {
        RewriteResult r = rewriteAt(sig_, g, t.name, t.occurrence, t.reversed);
        Solved s = solve(r.goal, cur, depth);
        ProofTerm eq = g.ctx.hypProp(t.name) ? ProofTerm::hyp(t.name) : ProofTerm::known(t.name);
        ProofTerm d = [&] {
          if (t.reversed) return ProofTerm::papp(ProofTerm::tapp(eq, r.motive), s.proof);
          // H (λz. Q z ⇒ Q s) (λh. h) d'
          Term qs = kernel::betaEta(Term::app(r.motive, r.from));
          Term pred = Term::lam("z", r.type, Term::imp(Term::app(r.motive, Term::bvar(0)), qs));
          ProofTerm id = ProofTerm::plam("h", qs, ProofTerm::hyp("h"));
          return ProofTerm::papp(ProofTerm::papp(ProofTerm::tapp(eq, pred), id), s.proof);
        }();
        return {d, s.end};
      }
      case Tactic::Kind::Apply: return apply(t, g, cur, depth);
    }
    fail(ErrorCode::SyntaxError, "malformed tactic", t.span);
  }

  struct Stripped {
    bool isAll;
    std::string hint;
    Type type = Type::prop();
    std::string metavar;     // All
    std::optional<Term> ante; // Imp (may mention metavariables)
  };

  Term rebuild(const std::vector<Stripped>& pre, std::size_t from, const Term& concl) {
    Term t = concl;
    for (std::size_t j = pre.size(); j-- > from;) {
      if (pre[j].isAll) {
        t = Term::all(pre[j].hint, pre[j].type, kernel::abstractFVar(t, pre[j].metavar));
      } else {
        t = Term::imp(*pre[j].ante, t);
      }
    }
    return t;
  }

  // Strips the syntactic All/Imp prefix of `t`, appending to `pre`.
  Term strip(const Term& t, std::vector<Stripped>& pre) {
    Term cur = t;
    while (true) {
      if (cur.is(Term::Kind::All)) {
        std::string mv = kernel::metavarName(metavars_++);
        pre.push_back(Stripped{true, cur.name(), cur.binderType(), mv, std::nullopt});
        cur = kernel::instantiate(cur.body(), Term::fvar(mv));
      } else if (cur.is(Term::Kind::Imp)) {
        pre.push_back(Stripped{false, "", Type::prop(), "", cur.antecedent()});
        cur = cur.consequent();
      } else {
        return cur;
      }
    }
  }

  struct ApplyMatch {
    std::vector<Stripped> prefix;
    std::size_t k;
    kernel::Substitution subst;
  };

  std::optional<ApplyMatch> findMatch(const Term& prop, const Term& goal) {
    constexpr int kMaxUnfold = 8;
    Term gv = kernel::betaEta(goal);
    for (int gi = 0; gi < kMaxUnfold; ++gi) {
      std::vector<Stripped> pre;
      Term concl = strip(kernel::betaEta(prop), pre);
      for (int pi = 0; pi < kMaxUnfold; ++pi) {
        for (std::size_t k = pre.size() + 1; k-- > 0;) {
          std::vector<kernel::Metavar> mvs;
          for (std::size_t j = 0; j < k; ++j) {
            if (pre[j].isAll) mvs.push_back(kernel::Metavar{pre[j].metavar, pre[j].type});
          }
          Term rem = rebuild(pre, k, concl);
          auto sub = kernel::matchConclusion(sig_, mvs, rem, gv);
          if (sub && sub->size() == mvs.size()) return ApplyMatch{pre, k, *sub};
        }
        auto unfolded = kernel::unfoldHead(sig_, concl);
        if (!unfolded) break;
        concl = strip(*unfolded, pre);
      }
      auto next = kernel::unfoldHead(sig_, gv);
      if (!next) break;
      gv = *next;
    }
    return std::nullopt;
  }

  Solved apply(const Tactic& t, const GoalState& g, Cursor& cur, int depth) {
    Scope scope{g.ctx, {}};
    Expr headExpr;
    headExpr.kind = Expr::Kind::Ident;
    headExpr.name = t.name;
    headExpr.span = Span{t.span.begin, t.span.end};
    auto [d, p] = proofs_.head(scope, headExpr);
    for (const auto& a : t.args) std::tie(d, p) = proofs_.applyArg(scope, d, p, *a);

    auto m = findMatch(p, g.conclusion);
    if (!m) {
      fail(ErrorCode::ApplyNoMatch,
           "cannot match " + kernel::printTerm(kernel::betaEta(p)) + " against the goal " +
               kernel::printTerm(g.conclusion),
           t.span);
    }
    std::size_t end = t.span.end;
    for (std::size_t j = 0; j < m->k; ++j) {
      const Stripped& s = m->prefix[j];
      if (s.isAll) {
        for (const auto& [n, v] : m->subst) {
          if (n == s.metavar) d = ProofTerm::tapp(d, v);
        }
      } else {
        Term sub = kernel::betaEta(kernel::applySubstitution(*s.ante, m->subst));
        Solved c = solve(GoalState{g.ctx, sub}, cur, depth);
        d = ProofTerm::papp(d, c.proof);
        end = c.end;
      }
    }
    return {d, end};
  }

  const Signature& sig_;
  std::string theorem_;
  ProofElab proofs_;
  std::size_t holes_ = 0;
  std::size_t metavars_ = 0;
};

// Returns the term with the n-th occurrence of `from` replaced by FVar `hole`.
Term replaceOccurrence(const Term& t, const Term& from, std::size_t n, std::size_t& seen,
                       const std::string& hole) {
  if (t.looseBound() == 0 && kernel::alphaEq(t, from)) {
    if (++seen == n) return Term::fvar(hole);
    return t;
  }
  switch (t.kind()) {
    case Term::Kind::App: {
      Term f = replaceOccurrence(t.fn(), from, n, seen, hole);
      Term a = replaceOccurrence(t.arg(), from, n, seen, hole);
      return Term::app(f, a);
    }
    case Term::Kind::Imp: {
      Term a = replaceOccurrence(t.antecedent(), from, n, seen, hole);
      Term c = replaceOccurrence(t.consequent(), from, n, seen, hole);
      return Term::imp(a, c);
    }
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.binderType(), replaceOccurrence(t.body(), from, n, seen, hole));
    case Term::Kind::All:
      return Term::all(t.name(), t.binderType(), replaceOccurrence(t.body(), from, n, seen, hole));
    default: return t;
  }
}

}  // namespace

std::pair<Term, Type> elabTerm(const Signature& sig, const Context& ctx, const Expr& e,
                               const std::optional<Type>& expected) {
  Scope scope{ctx, {}};
  return TermElab(sig, scope).run(e, expected);
}

Term elabProp(const Signature& sig, const Context& ctx, const Expr& e) {
  auto [t, ty] = elabTerm(sig, ctx, e, Type::prop());
  if (!ty.isProp()) {
    fail(ErrorCode::NonPropQuantBody, "'" + printExpr(e) + "' is not a proposition", e.span);
  }
  return t;
}

ProofTerm elabProof(const Signature& sig, const Context& ctx, const Expr& e, const Term& expected) {
  return ProofElab(sig).check(Scope{ctx, {}}, e, expected);
}

RewriteResult rewriteAt(const Signature& sig, const GoalState& goal, const std::string& eqName,
                        std::size_t n, bool reversed) {
  std::optional<Term> prop;
  if (const Term* h = goal.ctx.hypProp(eqName)) prop = *h;
  else prop = sig.factProp(eqName);
  if (!prop) throw Error(ErrorCode::UnknownName, "unknown equation '" + eqName + "'");
  Term p = kernel::betaEta(*prop);
  kernel::Spine sp = kernel::spine(p);
  std::optional<std::pair<std::string, Type>> fam;
  if (sp.head.is(Term::Kind::Const)) fam = kernel::familyMember(sp.head.name());
  if (!fam || fam->first != "eq" || sp.args.size() != 2) {
    throw Error(ErrorCode::NotAnEquation, "'" + eqName + "' is not an equation: " + kernel::printTerm(p));
  }
  Term from = reversed ? sp.args[1] : sp.args[0];
  Term to = reversed ? sp.args[0] : sp.args[1];
  const std::string hole = "?rw";
  std::size_t seen = 0;
  Term c = kernel::betaEta(goal.conclusion);
  Term marked = replaceOccurrence(c, from, n, seen, hole);
  if (seen < n) {
    throw Error(ErrorCode::OccurrenceOutOfRange,
                "occurrence " + std::to_string(n) + " of " + kernel::printTerm(from) +
                    " requested, but the goal has " + std::to_string(seen));
  }
  Term motive = Term::lam("z", fam->second, kernel::abstractFVar(marked, hole));
  GoalState out{goal.ctx, kernel::betaEta(kernel::substFVar(marked, hole, to))};
  return RewriteResult{std::move(out), motive, from, to, fam->second};
}

TheoremResult elaborateTheorem(const Signature& sig, const Item& item,
                               std::vector<TraceEntry>* partial) {
  TheoremResult r{item.name, item.span, item.proofSpan, elabProp(sig, Context{}, *item.body),
                  sig.size(), std::nullopt, {}, {}};
  Engine engine(sig, item.name);
  std::optional<ProofTerm> run;
  try {
    run = engine.run(item, r.prop);
  } catch (const Error&) {
    if (partial != nullptr) *partial = std::move(engine.trace);
    throw;
  }
  ProofTerm d = *run;
  r.trace = std::move(engine.trace);
  auto report = kernel::checkProof(sig, Context{}, d, r.prop);
  r.holes = std::move(report.holes);
  r.proof = d;
  return r;
}

namespace {

void addItem(Signature& sig, const Item& it) {
  Entry e;
  e.name = it.name;
  switch (it.kind) {
    case Item::Kind::Parameter:
      e.kind = Entry::Kind::Prim;
      e.type = it.type;
      break;
    case Item::Kind::Axiom:
      e.kind = Entry::Kind::Axiom;
      e.prop = elabProp(sig, Context{}, *it.body);
      break;
    case Item::Kind::Definition: {
      e.kind = Entry::Kind::Def;
      auto [t, ty] = elabTerm(sig, Context{}, *it.body, it.type);
      if (it.type && ty != *it.type) {
        throw Error(ErrorCode::TypeMismatch,
                    "definition has type " + ty.str() + " but is declared " + it.type->str(),
                    it.body->span);
      }
      kernel::typecheck(sig, Context{}, t);
      e.type = ty;
      e.definiens = t;
      break;
    }
    case Item::Kind::Theorem:
      e.kind = Entry::Kind::Thm;
      e.prop = elabProp(sig, Context{}, *it.body);
      break;
  }
  try {
    sig.add(std::move(e));
  } catch (const Error& err) {
    throw Error(err.code(), err.what(), it.span);
  }
}

Diagnostic toDiagnostic(const Error& e, Span fallback) {
  return Diagnostic{e.span().value_or(fallback), e.code(), e.what()};
}

}  // namespace

Development elaborate(const Signature& base, std::string source, const ElaborateOptions& opts) {
  Development dev;
  dev.source = std::move(source);
  dev.sig = base;
  dev.baseSize = base.size();
  try {
    dev.script = parseScript(dev.source);
  } catch (const Error& e) {
    dev.diagnostics.push_back(toDiagnostic(e, Span{0, 0}));
    return dev;
  }

  // Statement pass.
  struct Pending {
    const Item* item;
    std::size_t sigIndex;
  };
  std::vector<Pending> pending;
  for (const auto& it : dev.script.items) {
    if (it.span.begin >= opts.limit) break;
    try {
      addItem(dev.sig, it);
      if (it.kind == Item::Kind::Theorem) pending.push_back(Pending{&it, dev.sig.size() - 1});
    } catch (const Error& e) {
      dev.diagnostics.push_back(toDiagnostic(e, it.span));
    }
  }

  // Proof pass, in parallel against each theorem's prefix.
  std::vector<TheoremResult> results(pending.size(),
                                     TheoremResult{"", {}, {}, Term::constant("True"), 0, {}, {}, {}});
  std::vector<std::optional<Diagnostic>> errors(pending.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      const Pending& p = pending[i];
      Signature prefix = dev.sig.prefix(p.sigIndex);
      std::vector<TraceEntry> partial;
      try {
        results[i] = elaborateTheorem(prefix, *p.item, &partial);
      } catch (const Error& e) {
        errors[i] = toDiagnostic(e, p.item->span);
        results[i].trace = std::move(partial);
        results[i].name = p.item->name;
        results[i].span = p.item->span;
        results[i].proofSpan = p.item->proofSpan;
        results[i].prop = *dev.sig.at(p.sigIndex).prop;
      }
      results[i].sigIndex = p.sigIndex;
    }
  };
  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, pending.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& e : errors) {
    if (e) dev.diagnostics.push_back(*e);
  }
  std::sort(dev.diagnostics.begin(), dev.diagnostics.end(),
            [](const Diagnostic& a, const Diagnostic& b) { return a.span.begin < b.span.begin; });

  // Attach proofs to the theorem entries.
  std::map<std::size_t, const TheoremResult*> byIndex;
  for (const auto& r : results) byIndex[r.sigIndex] = &r;
  Signature finalSig;
  for (std::size_t i = 0; i < dev.sig.size(); ++i) {
    Entry e = dev.sig.at(i);
    auto it = byIndex.find(i);
    if (it != byIndex.end() && it->second->proof) e.proof = it->second->proof;
    finalSig.add(std::move(e));
  }
  dev.sig = std::move(finalSig);
  dev.theorems = std::move(results);
  if (auto xm = dev.sig.indexOf("xm")) dev.frontier = *xm;
  return dev;
}

}  // namespace hammerforge::script
