// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <map>
#include <set>

#include <json.hpp>

#include "hammerforge/kernel/print.hpp"
#include "translate.hpp"

namespace hammerforge::reconstruct {

namespace {

using kernel::ProofTerm;
using kernel::Term;

bool isPrf(const DkTerm& t) {
  return t.kind == DkTerm::Kind::App && t.args.size() == 2 &&
         t.args[0].kind == DkTerm::Kind::Ident && t.args[0].name == "Prf";
}

// Proof bodies in the resolution fragment: references to earlier entries,
// applications to terms and proofs, and lambdas over either.
class Evidence {
 public:
  Evidence(const kernel::Signature& sig, const tptp::ProblemBundle& bundle,
           const std::map<std::string, ProofTerm>& available)
      : sig_(sig), terms_(bundle, true), available_(available) {}

  ProofTerm proof(const DkTerm& t) {
    switch (t.kind) {
      case DkTerm::Kind::Ident: {
        if (auto p = resolve(t.name)) return *p;
        detail::outsideFragment(t, "unknown proof reference");
      }
      case DkTerm::Kind::App: {
        ProofTerm acc = proof(t.args[0]);
        for (std::size_t i = 1; i < t.args.size(); ++i) {
          const DkTerm& a = t.args[i];
          acc = isProof(a) ? ProofTerm::papp(acc, proof(a))
                           : ProofTerm::tapp(acc, kernel::betaEta(terms_.term(a)));
        }
        return acc;
      }
      case DkTerm::Kind::Lam: {
        const DkTerm& dom = t.args[0];
        if (isPrf(dom)) {
          Term prop = kernel::betaEta(terms_.term(dom.args[1]));
          proofVars_.push_back(t.name);
          ProofTerm body = proof(t.args[1]);
          proofVars_.pop_back();
          return ProofTerm::plam(t.name, prop, body);
        }
        kernel::Type ty = terms_.type(dom);
        terms_.named.emplace_back(t.name, ty);
        ProofTerm body = proof(t.args[1]);
        terms_.named.pop_back();
        return ProofTerm::tlam(t.name, ty, body);
      }
      case DkTerm::Kind::Pi:
        break;
    }
    detail::outsideFragment(t, "product in a proof");
  }

 private:
  std::optional<ProofTerm> resolve(const std::string& n) const {
    for (auto it = proofVars_.rbegin(); it != proofVars_.rend(); ++it) {
      if (*it == n) return ProofTerm::hyp(n);
    }
    if (auto it = available_.find(n); it != available_.end()) return it->second;
    std::string name = n;
    try {
      name = tptp::unmangle(n);
    } catch (const Error&) {
    }
    if (sig_.factProp(name)) return ProofTerm::known(name);
    return std::nullopt;
  }

  bool isProof(const DkTerm& t) const {
    switch (t.kind) {
      case DkTerm::Kind::Ident: {
        for (const auto& [v, ty] : terms_.named) {
          if (v == t.name) return false;
        }
        return resolve(t.name).has_value();
      }
      case DkTerm::Kind::App: return isProof(t.args[0]);
      case DkTerm::Kind::Lam: return isPrf(t.args[0]);
      case DkTerm::Kind::Pi: return false;
    }
    return false;
  }

  const kernel::Signature& sig_;
  detail::Translator terms_;
  const std::map<std::string, ProofTerm>& available_;
  std::vector<std::string> proofVars_;
};

Term propOf(const DkDecl& d, const tptp::ProblemBundle& bundle) {
  const DkTerm* p = d.proved();
  if (p == nullptr) detail::outsideFragment(d.type, "'" + d.name + "' is not a proof declaration");
  return translateProp(*p, bundle, true);
}

}  // namespace

ProofTerm Skeleton::proof(const std::string& holePrefix) const {
  std::size_t n = 0;
  auto evidence = [&](const Step& s) {
    return s.evidence ? *s.evidence : ProofTerm::abyHole(holePrefix + "#" + std::to_string(++n), {});
  };
  std::vector<const Step*> chain;
  for (const auto& p : premises) chain.push_back(&p);
  for (std::size_t i = 0; i <= final && i < steps.size(); ++i) chain.push_back(&steps[i]);
  std::vector<ProofTerm> evs;
  for (const Step* s : chain) evs.push_back(evidence(*s));

  ProofTerm body = steps.empty() ? ProofTerm::abyHole(holePrefix + "#" + std::to_string(++n), {})
                                 : ProofTerm::hyp(steps[final].name);
  for (std::size_t i = chain.size(); i-- > 0;) {
    body = ProofTerm::papp(ProofTerm::plam(chain[i]->name, chain[i]->prop, body), evs[i]);
  }
  Term neg = Term::app(Term::constant("not"), goal.conclusion);
  return ProofTerm::papp(ProofTerm::tapp(ProofTerm::known(wrapperLemma), goal.conclusion),
                         ProofTerm::plam(negHyp, neg, body));
}

std::size_t Skeleton::holes() const {
  std::size_t n = 0;
  for (const auto& p : premises) n += p.evidence ? 0 : 1;
  for (const auto& s : steps) n += s.evidence ? 0 : 1;
  return n;
}

Skeleton scaffold(const kernel::Signature& sig, const Goal& goal, const std::vector<DkDecl>& decls,
                  const NameMapping& mapping, const tptp::ProblemBundle& bundle) {
  Skeleton sk;
  sk.goal = goal;
  kernel::Context ctx = goal.ctx;
  std::set<std::string> used;
  auto fresh = [&](std::string base) {
    while (ctx.hasName(base) || used.count(base)) base += "'";
    used.insert(base);
    return base;
  };
  sk.negHyp = fresh("NC");
  ctx.hyps.emplace_back(sk.negHyp, Term::app(Term::constant("not"), goal.conclusion));

  std::map<std::string, ProofTerm> available;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    const DkDecl& d = decls[i];
    const Recovered* r = mapping.find(d.name);
    Role role = r ? r->role : Role::Unmatched;
    switch (role) {
      case Role::Fact: available.emplace(d.name, ProofTerm::known(r->source)); break;
      case Role::Hyp: available.emplace(d.name, ProofTerm::hyp(r->source)); break;
      case Role::NegatedConjecture: available.emplace(d.name, ProofTerm::hyp(sk.negHyp)); break;
      case Role::Def:
      case Role::Unmatched: {
        Step p;
        p.name = fresh(d.name);
        p.prop = propOf(d, bundle);
        p.hole = role == Role::Def ? "definition axiom" : std::string(kUnjustified);
        ctx.hyps.emplace_back(p.name, p.prop);
        available.emplace(d.name, ProofTerm::hyp(p.name));
        sk.premises.push_back(std::move(p));
        break;
      }
      case Role::Step: {
        Step s;
        s.name = fresh(d.name);
        s.prop = propOf(d, bundle);
        try {
          ProofTerm ev = Evidence(sig, bundle, available).proof(*d.body);
          try {
            kernel::checkProof(sig, ctx, ev, s.prop);
            s.evidence = ev;
            s.checked = true;
          } catch (const Error& e) {
            s.hole = std::string("evidence does not check: ") + e.what();
          }
        } catch (const Error&) {
          s.hole = std::string(kUnjustified);
        }
        ctx.hyps.emplace_back(s.name, s.prop);
        available.emplace(d.name, ProofTerm::hyp(s.name));
        sk.steps.push_back(std::move(s));
        break;
      }
    }
  }

  std::optional<std::size_t> final;
  for (std::size_t i = 0; i < sk.steps.size(); ++i) {
    if (kernel::alphaEq(sk.steps[i].prop, Term::constant("False"))) final = i;
  }
  if (!final) throw Error(ErrorCode::NoFalsumStep, "no definition proves False");
  sk.steps.resize(*final + 1);
  sk.final = *final;
  return sk;
}

Audit auditSkeleton(const Skeleton& sk) {
  Audit a;
  a.steps = sk.steps.size();
  a.holes = sk.holes();
  for (const auto& s : sk.steps) a.checked += s.checked ? 1 : 0;
  return a;
}

std::string Audit::render() const {
  return "steps: " + std::to_string(steps) + ", holes: " + std::to_string(holes) +
         ", checked: " + std::to_string(checked) + (complete() ? " (complete)\n" : " (incomplete)\n");
}

std::string Audit::json() const {
  nlohmann::ordered_json j;
  j["steps"] = steps;
  j["holes"] = holes;
  j["checked"] = checked;
  j["complete"] = complete();
  return j.dump();
}

kernel::CheckReport splice(const kernel::Signature& sig, const ProofTerm& proof, const Term& claimed,
                           const std::string& holeId, const Skeleton& sk) {
  bool replaced = false;
  ProofTerm p = kernel::replaceHole(proof, holeId, sk.proof(holeId + "/r"), &replaced);
  if (!replaced) throw Error(ErrorCode::UnknownName, "no aby hole '" + holeId + "' in the proof");
  return kernel::checkProof(sig, {}, p, claimed);
}

}  // namespace hammerforge::reconstruct
