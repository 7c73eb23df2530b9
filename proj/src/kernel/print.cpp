// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/print.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "hammerforge/kernel/signature.hpp"

namespace hammerforge::kernel {

namespace {

enum Prec : int {
  kBinder = 0,
  kIff = 1,
  kImp = 2,
  kOr = 3,
  kAnd = 4,
  kNot = 5,
  kRel = 6,
  kApp = 7,
  kAtom = 8,
};

class Printer {
 public:
  std::string print(const Term& t, int prec) {
    std::ostringstream os;
    int own = emit(os, t);
    std::string s = os.str();
    return own < prec ? "(" + s + ")" : s;
  }

 private:
  // Writes t and returns its precedence level.
  int emit(std::ostream& os, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Const:
      case Term::Kind::FVar: os << t.name(); return kAtom;
      case Term::Kind::BVar:
        if (t.index() < scope_.size()) {
          os << scope_[scope_.size() - 1 - t.index()];
        } else {
          os << "#" << t.index();
        }
        return kAtom;
      case Term::Kind::Imp:
        os << print(t.antecedent(), kOr) << " -> " << print(t.consequent(), kImp);
        return kImp;
      case Term::Kind::All: return emitBinder(os, t, "forall", ",");
      case Term::Kind::Lam: return emitBinder(os, t, "fun", " =>");
      case Term::Kind::App: return emitApp(os, t);
    }
    return kAtom;
  }

  int emitApp(std::ostream& os, const Term& t) {
    Spine sp = spine(t);
    if (sp.head.is(Term::Kind::Const)) {
      const std::string& h = sp.head.name();
      const auto n = sp.args.size();
      if (h == "not" && n == 1) {
        os << "~" << print(sp.args[0], kNot);
        return kNot;
      }
      if ((h == "and" || h == "or" || h == "iff") && n == 2) {
        const int level = h == "and" ? kAnd : h == "or" ? kOr : kIff;
        const char* op = h == "and" ? " /\\ " : h == "or" ? " \\/ " : " <-> ";
        const int lhs = level == kIff ? kIff + 1 : level;
        os << print(sp.args[0], lhs) << op << print(sp.args[1], level + 1);
        return level;
      }
      if (n == 2 && (h == "In" || (familyMember(h) && familyMember(h)->first == "eq"))) {
        os << print(sp.args[0], kApp) << (h == "In" ? " :e " : " = ") << print(sp.args[1], kApp);
        return kRel;
      }
      if (n == 1 && sp.args[0].is(Term::Kind::Lam)) {
        auto fam = familyMember(h);
        if (fam && fam->first == "ex" && sp.args[0].binderType() == fam->second) {
          return emitBinder(os, sp.args[0], "exists", ",");
        }
      }
    }
    os << print(sp.head, kAtom);
    for (const auto& a : sp.args) os << " " << print(a, kAtom);
    return kApp;
  }

  // Prints a run of binders of the same kind and type as one group.
  int emitBinder(std::ostream& os, const Term& t, const char* keyword, const char* sep) {
    const Term::Kind kind = t.kind();
    const Type ty = t.binderType();
    std::vector<std::string> names;
    const Term* cur = &t;
    const bool isExists = std::string(keyword) == "exists";
    while (true) {
      std::string n = fresh(*cur);
      names.push_back(n);
      scope_.push_back(n);
      const Term& body = cur->body();
      if (isExists) {
        // exists x y:T, b  prints the nested ex (fun y => ...) as one group
        if (body.is(Term::Kind::App) && body.fn().is(Term::Kind::Const) &&
            body.fn().name() == existsName(ty) && body.arg().is(Term::Kind::Lam) &&
            body.arg().binderType() == ty) {
          cur = &body.arg();
          continue;
        }
      } else if (body.kind() == kind && body.binderType() == ty) {
        cur = &body;
        continue;
      }
      break;
    }
    os << keyword;
    for (const auto& n : names) os << " " << n;
    os << ":" << ty.str() << sep << " " << print(cur->body(), kBinder);
    scope_.resize(scope_.size() - names.size());
    return kBinder;
  }

  std::string fresh(const Term& binder) {
    std::string base = binder.name().empty() ? "x" : binder.name();
    std::set<std::string> avoid(scope_.begin(), scope_.end());
    forEachConst(binder.body(), [&](const std::string& c) { avoid.insert(c); });
    forEachFVar(binder.body(), [&](const std::string& c) { avoid.insert(c); });
    if (!avoid.count(base) && !isKeyword(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!avoid.count(cand)) return cand;
    }
  }

  static bool isKeyword(const std::string& s) {
    static const std::set<std::string> kw = {"forall", "exists", "fun", "set", "prop",
                                             "let", "assume", "apply", "exact", "rewrite",
                                             "claim", "aby", "at", "Qed", "Theorem",
                                             "Definition", "Parameter", "Axiom"};
    return kw.count(s) != 0;
  }

  std::vector<std::string> scope_;
};

}  // namespace

std::string printTerm(const Term& t) { return Printer().print(t, kBinder); }

}  // namespace hammerforge::kernel
