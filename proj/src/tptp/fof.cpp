// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <map>
#include <sstream>

#include "hammerforge/kernel/print.hpp"
#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::tptp {

using kernel::Term;
using kernel::Type;

namespace {

struct Reject {
  std::string reason;
  Term subterm;
};

// Number of leading set arguments and the final result type.
std::pair<std::size_t, Type> firstOrderShape(const Type& t) {
  std::size_t n = 0;
  Type cur = t;
  while (cur.isArrow() && cur.domain().isSet()) {
    ++n;
    cur = cur.codomain();
  }
  return {n, cur};
}

class FoChecker {
 public:
  FoChecker(const kernel::Signature& sig, const ProblemBundle& b) : sig_(sig) {
    for (const auto& s : b.symbols) types_.emplace(s.name, s.type);
  }

  std::map<std::string, FoSymbol> symbols;
  std::vector<std::string> order;

  // Rewrites `c = λx̄. body` into `∀x̄. c x̄ ⇔ body` (or `=` at set).
  Term definitionAxiom(const Formula& f) {
    kernel::Spine sp = kernel::spine(f.prop);
    const Term& c = sp.args.at(0);
    const Type ty = typeOf(c.name());
    auto [n, result] = firstOrderShape(ty);
    if (!(result.isSet() || result.isProp()) || (n == 0 && ty.isArrow())) {
      throw Reject{"definition '" + c.name() + "' has non-first-order type " + ty.str(), c};
    }
    const auto k = static_cast<std::uint32_t>(n);
    std::vector<Term> vars;
    for (std::uint32_t i = 0; i < k; ++i) vars.push_back(Term::bvar(k - 1 - i));
    Term lhs = Term::app(c, vars);
    Term rhs = kernel::betaEta(Term::app(kernel::lift(sp.args.at(1), k), vars));
    Term body = Term::app(Term::constant(result.isProp() ? "iff" : "eq"), {lhs, rhs});
    for (std::uint32_t i = 0; i < k; ++i) body = Term::all("x", Type::set(), body);
    return body;
  }

  Term formula(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Imp: return Term::imp(formula(t.antecedent()), formula(t.consequent()));
      case Term::Kind::All:
        if (!t.binderType().isSet()) {
          throw Reject{"quantification at type " + t.binderType().str(), t};
        }
        return Term::all(t.name(), t.binderType(), formula(t.body()));
      case Term::Kind::Lam: throw Reject{"lambda abstraction in formula position", t};
      default: break;
    }
    kernel::Spine sp = kernel::spine(t);
    if (!sp.head.is(Term::Kind::Const)) throw Reject{"variable used as a formula", t};
    const std::string& h = sp.head.name();
    auto arity = [&](std::size_t n) {
      if (sp.args.size() != n) throw Reject{"connective '" + h + "' not fully applied", t};
    };
    if (h == "True" || h == "False") {
      arity(0);
      return t;
    }
    if (h == "not") {
      arity(1);
      return Term::app(sp.head, formula(sp.args[0]));
    }
    if (h == "and" || h == "or" || h == "iff") {
      arity(2);
      return Term::app(sp.head, {formula(sp.args[0]), formula(sp.args[1])});
    }
    if (auto m = kernel::familyMember(h)) {
      if (!m->second.isSet()) {
        throw Reject{(m->first == "eq" ? "equality at type " : "quantification at type ") + m->second.str(), t};
      }
      if (m->first == "eq") {
        arity(2);
        return Term::app(sp.head, {term(sp.args[0]), term(sp.args[1])});
      }
      arity(1);
      Term body = sp.args[0].is(Term::Kind::Lam)
                      ? sp.args[0].body()
                      : kernel::betaEta(Term::app(kernel::lift(sp.args[0], 1), Term::bvar(0)));
      return Term::app(sp.head, Term::lam("x", Type::set(), formula(body)));
    }
    return symbolApp(sp, t, true);
  }

  Term term(const Term& t) {
    if (t.is(Term::Kind::BVar)) return t;
    if (t.is(Term::Kind::Lam)) throw Reject{"lambda abstraction", t};
    if (t.is(Term::Kind::Imp) || t.is(Term::Kind::All)) throw Reject{"formula in term position", t};
    kernel::Spine sp = kernel::spine(t);
    if (!sp.head.is(Term::Kind::Const)) throw Reject{"applied variable", t};
    if (kernel::isLogicalConst(sp.head.name())) throw Reject{"formula in term position", t};
    return symbolApp(sp, t, false);
  }

 private:
  Type typeOf(const std::string& c) {
    auto it = types_.find(c);
    if (it != types_.end()) return it->second;
    auto ty = sig_.constType(c);
    if (!ty) throw Reject{"unknown symbol '" + c + "'", Term::constant(c)};
    return *ty;
  }

  Term symbolApp(const kernel::Spine& sp, const Term& t, bool predicate) {
    const std::string& h = sp.head.name();
    const Type ty = typeOf(h);
    auto [n, result] = firstOrderShape(ty);
    if (!(predicate ? result.isProp() : result.isSet())) {
      throw Reject{"'" + h + "' has non-first-order type " + ty.str(), t};
    }
    if (sp.args.size() != n) throw Reject{"'" + h + "' partially applied", t};
    std::vector<Term> args;
    for (const auto& a : sp.args) args.push_back(term(a));
    auto it = symbols.find(h);
    if (it == symbols.end()) {
      symbols.emplace(h, FoSymbol{mangle(h), n, predicate});
      order.push_back(h);
    }
    return args.empty() ? sp.head : Term::app(sp.head, args);
  }

  const kernel::Signature& sig_;
  std::map<std::string, Type> types_;
};

std::string var(std::size_t level) { return "X" + std::to_string(level); }

class FofPrinter {
 public:
  std::string formula(const Term& t, std::size_t d) {
    switch (t.kind()) {
      case Term::Kind::Imp:
        return "(" + formula(t.antecedent(), d) + " => " + formula(t.consequent(), d) + ")";
      case Term::Kind::All: return "(![" + var(d) + "]: " + formula(t.body(), d + 1) + ")";
      default: break;
    }
    kernel::Spine sp = kernel::spine(t);
    const std::string& h = sp.head.name();
    if (h == "True") return "$true";
    if (h == "False") return "$false";
    if (h == "not") return "(~ " + formula(sp.args[0], d) + ")";
    if (h == "and") return "(" + formula(sp.args[0], d) + " & " + formula(sp.args[1], d) + ")";
    if (h == "or") return "(" + formula(sp.args[0], d) + " | " + formula(sp.args[1], d) + ")";
    if (h == "iff") return "(" + formula(sp.args[0], d) + " <=> " + formula(sp.args[1], d) + ")";
    if (h == "eq") return "(" + term(sp.args[0], d) + " = " + term(sp.args[1], d) + ")";
    if (h == "ex") return "(?[" + var(d) + "]: " + formula(sp.args[0].body(), d + 1) + ")";
    return term(t, d);
  }

  std::string term(const Term& t, std::size_t d) {
    if (t.is(Term::Kind::BVar)) return var(d - 1 - t.index());
    kernel::Spine sp = kernel::spine(t);
    std::string s = mangle(sp.head.name());
    if (sp.args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < sp.args.size(); ++i) s += (i ? "," : "") + term(sp.args[i], d);
    return s + ")";
  }
};

}  // namespace

std::variant<FoProblem, NotFirstOrder> foFragment(const kernel::Signature& sig, const ProblemBundle& b) {
  FoChecker check(sig, b);
  FoProblem out;
  out.problemId = b.problemId;
  out.mode = b.mode;
  out.theorem = b.theorem;
  out.origin = b.origin;
  auto one = [&](const Formula& f, bool conj) -> std::optional<NotFirstOrder> {
    try {
      Term p = f.origin == Origin::Def ? check.definitionAxiom(f) : f.prop;
      out.formulas.push_back(FoFormula{f.name, conj, check.formula(p)});
    } catch (const Reject& r) {
      return NotFirstOrder{f.name, r.reason, r.subterm};
    }
    return std::nullopt;
  };
  for (const auto& f : b.axioms) {
    if (auto bad = one(f, false)) return *bad;
  }
  if (auto bad = one(b.conjecture, true)) return *bad;
  for (const auto& n : check.order) out.symbols.push_back(check.symbols.at(n));
  return out;
}

std::string toFof(const FoProblem& f) {
  std::ostringstream os;
  os << "% problem: " << f.problemId << "\n";
  os << "% origin: " << f.theorem << " " << f.origin.begin << "-" << f.origin.end << "\n";
  os << "% mode: " << modeName(f.mode) << "\n";
  FofPrinter p;
  for (const auto& g : f.formulas) {
    os << "fof(" << g.name << ", " << (g.conjecture ? "conjecture" : "axiom") << ", " << p.formula(g.prop, 0)
       << ").\n";
  }
  return os.str();
}

}  // namespace hammerforge::tptp
