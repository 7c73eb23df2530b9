// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <algorithm>
#include <set>

#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::tptp {

using kernel::Term;
using kernel::Type;

std::string_view modeName(Mode m) {
  switch (m) {
    case Mode::Bushy: return "bushy";
    case Mode::Chainy: return "chainy";
    case Mode::Aby: return "aby";
  }
  return "bushy";
}

Mode parseMode(std::string_view name) {
  if (name == "bushy") return Mode::Bushy;
  if (name == "chainy") return Mode::Chainy;
  if (name == "aby") return Mode::Aby;
  throw Error(ErrorCode::SyntaxError, "unknown mode '" + std::string(name) + "' (bushy, chainy or aby)");
}

std::optional<std::string> ProblemBundle::recoverName(std::string_view tptpName) const {
  for (const auto& f : axioms) {
    if (f.name == tptpName) return f.source;
  }
  if (conjecture.name == tptpName) return conjecture.source;
  for (const auto& reading : readFormulaName(tptpName)) {
    for (const auto& cand : reading.candidates) {
      for (const auto& f : axioms) {
        if (f.origin == reading.origin && f.source == cand) return f.source;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> ProblemBundle::recoverSymbol(std::string_view id) const {
  for (const auto& s : symbols) {
    if (s.id == id) return s.name;
  }
  try {
    std::string n = unmangle(id);
    for (const auto& s : symbols) {
      if (s.name == n) return n;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::vector<std::string> ProblemBundle::axiomSources() const {
  std::vector<std::string> out;
  for (const auto& f : axioms) out.push_back(f.source);
  return out;
}

ProblemBundle buildBundle(const kernel::Signature& sig, const BundleRequest& req) {
  ProblemBundle b;
  b.problemId = req.problemId;
  b.mode = req.mode;
  b.theorem = req.theorem;
  b.origin = req.origin;
  b.goalCtx = req.ctx;
  b.goal = req.conclusion;

  auto close = [&](Term t) {
    for (const auto& [v, ty] : req.ctx.vars) {
      if (kernel::occursFVar(t, v)) t = kernel::substFVar(t, v, Term::constant(v));
    }
    return kernel::betaEta(t);
  };

  std::size_t ordinal = 1;
  for (const auto& f : req.facts) {
    auto p = sig.factProp(f);
    if (!p) throw Error(ErrorCode::UnknownName, "unknown fact '" + f + "'");
    b.axioms.push_back(Formula{formulaName(Origin::Fact, f, ordinal++), f, Origin::Fact, kernel::betaEta(*p)});
  }
  for (const auto& h : req.hyps) {
    const Term* p = req.ctx.hypProp(h);
    if (p == nullptr) throw Error(ErrorCode::UnknownHyp, "unknown hypothesis '" + h + "'");
    b.axioms.push_back(Formula{formulaName(Origin::Hyp, h, ordinal++), h, Origin::Hyp, close(*p)});
  }
  Term conj = close(req.conclusion);

  // Definitions reachable from the formulas, in signature order.
  std::set<std::string> defs;
  std::vector<std::string> work(req.defs.begin(), req.defs.end());
  auto scan = [&](const Term& t) { kernel::forEachConst(t, [&](const std::string& c) { work.push_back(c); }); };
  for (const auto& f : b.axioms) scan(f.prop);
  scan(conj);
  while (!work.empty()) {
    std::string c = work.back();
    work.pop_back();
    if (kernel::isLogicalConst(c) || defs.count(c)) continue;
    const kernel::Entry* d = sig.def(c);
    if (d == nullptr) continue;
    defs.insert(c);
    scan(*d->definiens);
  }
  std::vector<std::string> ordered(defs.begin(), defs.end());
  std::sort(ordered.begin(), ordered.end(), [&](const std::string& x, const std::string& y) {
    return sig.indexOf(x).value_or(0) < sig.indexOf(y).value_or(0);
  });
  for (const auto& d : ordered) {
    const kernel::Entry* e = sig.def(d);
    Term eq = Term::app(Term::constant(kernel::equalsName(*e->type)),
                        {Term::constant(d), kernel::betaEta(*e->definiens)});
    b.axioms.push_back(Formula{formulaName(Origin::Def, d, ordinal++), d, Origin::Def, eq});
  }
  b.conjecture = Formula{formulaName(Origin::Conjecture, req.theorem, ordinal), req.theorem,
                         Origin::Conjecture, conj};

  std::set<std::string> seen;
  auto collect = [&](const Term& t) {
    kernel::forEachConst(t, [&](const std::string& c) {
      if (kernel::isLogicalConst(c) || !seen.insert(c).second) return;
      if (const Type* vt = req.ctx.varType(c)) {
        b.symbols.push_back(Symbol{c, mangle(c), *vt, true});
        return;
      }
      auto ty = sig.constType(c);
      if (!ty) throw Error(ErrorCode::UnknownConst, "unknown constant '" + c + "'");
      b.symbols.push_back(Symbol{c, mangle(c), *ty, false});
    });
  };
  for (const auto& f : b.axioms) collect(f.prop);
  collect(b.conjecture.prop);
  return b;
}

}  // namespace hammerforge::tptp
