// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/proof.hpp"

#include <algorithm>
#include <unordered_set>

namespace hammerforge::kernel {

ProofTerm ProofTerm::hyp(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hyp;
  n->name = std::move(name);
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::known(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Known;
  n->name = std::move(name);
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::tapp(ProofTerm proof, Term term) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::TApp;
  n->lhs = std::make_unique<ProofTerm>(std::move(proof));
  n->term = std::make_unique<Term>(std::move(term));
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::papp(ProofTerm proof, ProofTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PApp;
  n->lhs = std::make_unique<ProofTerm>(std::move(proof));
  n->rhs = std::make_unique<ProofTerm>(std::move(arg));
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::tlam(std::string var, Type type, ProofTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::TLam;
  n->name = std::move(var);
  n->type = std::make_unique<Type>(std::move(type));
  n->lhs = std::make_unique<ProofTerm>(std::move(body));
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::plam(std::string hyp, Term prop, ProofTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PLam;
  n->name = std::move(hyp);
  n->term = std::make_unique<Term>(std::move(prop));
  n->lhs = std::make_unique<ProofTerm>(std::move(body));
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::abyHole(std::string problemId, std::vector<std::string> deps) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::AbyHole;
  n->name = std::move(problemId);
  n->deps = std::move(deps);
  return ProofTerm(std::move(n));
}

std::size_t ProofTerm::holeCount() const {
  switch (kind()) {
    case Kind::AbyHole: return 1;
    case Kind::TApp: return head().holeCount();
    case Kind::PApp: return head().holeCount() + argProof().holeCount();
    case Kind::TLam:
    case Kind::PLam: return body().holeCount();
    default: return 0;
  }
}

ProofTerm renameTermVar(const ProofTerm& d, const std::string& from, const std::string& to) {
  using K = ProofTerm::Kind;
  const Term replacement = Term::fvar(to);
  switch (d.kind()) {
    case K::TApp:
      return ProofTerm::tapp(renameTermVar(d.head(), from, to), substFVar(d.term(), from, replacement));
    case K::PApp:
      return ProofTerm::papp(renameTermVar(d.head(), from, to), renameTermVar(d.argProof(), from, to));
    case K::TLam:
      if (d.name() == from) return d;
      return ProofTerm::tlam(d.name(), d.type(), renameTermVar(d.body(), from, to));
    case K::PLam:
      return ProofTerm::plam(d.name(), substFVar(d.term(), from, replacement),
                             renameTermVar(d.body(), from, to));
    default: return d;
  }
}

ProofTerm renameHyp(const ProofTerm& d, const std::string& from, const std::string& to) {
  using K = ProofTerm::Kind;
  switch (d.kind()) {
    case K::Hyp: return d.name() == from ? ProofTerm::hyp(to) : d;
    case K::TApp: return ProofTerm::tapp(renameHyp(d.head(), from, to), d.term());
    case K::PApp:
      return ProofTerm::papp(renameHyp(d.head(), from, to), renameHyp(d.argProof(), from, to));
    case K::TLam: return ProofTerm::tlam(d.name(), d.type(), renameHyp(d.body(), from, to));
    case K::PLam:
      if (d.name() == from) return d;
      return ProofTerm::plam(d.name(), d.term(), renameHyp(d.body(), from, to));
    case K::AbyHole: {
      auto deps = d.deps();
      std::replace(deps.begin(), deps.end(), from, to);
      return ProofTerm::abyHole(d.name(), std::move(deps));
    }
    default: return d;
  }
}

ProofTerm replaceHole(const ProofTerm& d, const std::string& problemId,
                      const ProofTerm& replacement, bool* replaced) {
  using K = ProofTerm::Kind;
  switch (d.kind()) {
    case K::AbyHole:
      if (d.name() == problemId) {
        if (replaced) *replaced = true;
        return replacement;
      }
      return d;
    case K::TApp:
      return ProofTerm::tapp(replaceHole(d.head(), problemId, replacement, replaced), d.term());
    case K::PApp:
      return ProofTerm::papp(replaceHole(d.head(), problemId, replacement, replaced),
                             replaceHole(d.argProof(), problemId, replacement, replaced));
    case K::TLam:
      return ProofTerm::tlam(d.name(), d.type(),
                             replaceHole(d.body(), problemId, replacement, replaced));
    case K::PLam:
      return ProofTerm::plam(d.name(), d.term(),
                             replaceHole(d.body(), problemId, replacement, replaced));
    default: return d;
  }
}

namespace {

struct NameCollector {
  const std::function<bool(const std::string&)>& isGlobalFact;
  ProofNames out;
  std::unordered_set<std::string> seenKnown, seenHyp, seenConst;
  std::vector<std::string> boundHyps;

  bool bound(const std::string& n) const {
    return std::find(boundHyps.begin(), boundHyps.end(), n) != boundHyps.end();
  }
  void addKnown(const std::string& n) {
    if (seenKnown.insert(n).second) out.known.push_back(n);
  }
  void addHyp(const std::string& n) {
    if (seenHyp.insert(n).second) out.freeHyps.push_back(n);
  }
  void addTerm(const Term& t) {
    forEachConst(t, [&](const std::string& c) {
      if (seenConst.insert(c).second) out.constants.push_back(c);
    });
  }

  void visit(const ProofTerm& d) {
    using K = ProofTerm::Kind;
    switch (d.kind()) {
      case K::Hyp:
        if (!bound(d.name())) addHyp(d.name());
        break;
      case K::Known: addKnown(d.name()); break;
      case K::TApp:
        visit(d.head());
        addTerm(d.term());
        break;
      case K::PApp:
        visit(d.head());
        visit(d.argProof());
        break;
      case K::TLam: visit(d.body()); break;
      case K::PLam:
        addTerm(d.term());
        boundHyps.push_back(d.name());
        visit(d.body());
        boundHyps.pop_back();
        break;
      case K::AbyHole:
        for (const auto& dep : d.deps()) {
          if (bound(dep)) continue;
          if (isGlobalFact(dep)) addKnown(dep);
          else addHyp(dep);
        }
        break;
    }
  }
};

}  // namespace

ProofNames collectNames(const ProofTerm& d,
                        const std::function<bool(const std::string&)>& isGlobalFact) {
  NameCollector c{isGlobalFact, {}, {}, {}, {}, {}};
  c.visit(d);
  return std::move(c.out);
}

}  // namespace hammerforge::kernel
