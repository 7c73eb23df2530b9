// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/basis/basis.hpp"

#include <mutex>
#include <sstream>

#include "hammerforge/error.hpp"
#include "hammerforge/kernel/print.hpp"
#include "hammerforge/script/elaborate.hpp"

namespace hammerforge::basis {

namespace {

// Primitives, impredicative connectives, the materialized ∃/= members used
// by the axioms, and the set-theoretic axioms.
const char* const kFoundations = R"(
Parameter Eps_i : (set -> prop) -> set.
Parameter In : set -> set -> prop.
Parameter Empty : set.
Parameter Union : set -> set.
Parameter Power : set -> set.
Parameter Repl : set -> (set -> set) -> set.
Parameter UnivOf : set -> set.

Definition True : prop := forall p:prop, p -> p.
Definition False : prop := forall p:prop, p.
Definition not : prop -> prop := fun A => A -> False.
Definition and : prop -> prop -> prop := fun A B => forall p:prop, (A -> B -> p) -> p.
Definition or : prop -> prop -> prop := fun A B => forall p:prop, (A -> p) -> (B -> p) -> p.
Definition iff : prop -> prop -> prop := fun A B => and (A -> B) (B -> A).
Definition ex : (set -> prop) -> prop := fun P => forall q:prop, (forall x:set, P x -> q) -> q.
Definition ex_o : (prop -> prop) -> prop := fun P => forall q:prop, (forall x:prop, P x -> q) -> q.
Definition eq : set -> set -> prop := fun x y => forall Q:set -> prop, Q x -> Q y.
Definition eq_o : prop -> prop -> prop := fun x y => forall Q:prop -> prop, Q x -> Q y.
Definition eq_Fii : (set -> set) -> (set -> set) -> prop :=
  fun x y => forall Q:(set -> set) -> prop, Q x -> Q y.
Definition eq_Fio : (set -> prop) -> (set -> prop) -> prop :=
  fun x y => forall Q:(set -> prop) -> prop, Q x -> Q y.

Axiom Eps_i_ax : forall P:set -> prop, forall x:set, P x -> P (Eps_i P).
Axiom set_ext : forall X Y:set, (forall x, x :e X -> x :e Y) -> (forall x, x :e Y -> x :e X) -> X = Y.
Axiom In_ind : forall P:set -> prop, (forall x:set, (forall y:set, y :e x -> P y) -> P x) -> forall x:set, P x.
Axiom EmptyAx : forall x:set, ~ x :e Empty.
Axiom UnionEq : forall X z:set, z :e Union X <-> exists Y:set, z :e Y /\ Y :e X.
Axiom PowerEq : forall X Y:set, Y :e Power X <-> (forall z, z :e Y -> z :e X).
Axiom ReplEq : forall X:set, forall F:set -> set, forall y:set,
  y :e Repl X F <-> exists x:set, x :e X /\ y = F x.
Axiom UnivOf_In : forall X:set, X :e UnivOf X.
Axiom UnivOf_TransSet : forall X:set, forall x, x :e UnivOf X -> forall y, y :e x -> y :e UnivOf X.
Axiom UnivOf_ZF_closed : forall X:set, forall x, x :e UnivOf X ->
  Union x :e UnivOf X /\ Power x :e UnivOf X /\
  (forall F:set -> set, (forall y, y :e x -> F y :e UnivOf X) -> Repl x F :e UnivOf X).
Axiom UnivOf_Min : forall X U:set, X :e U ->
  (forall x, x :e U -> forall y, y :e x -> y :e U) ->
  (forall x, x :e U -> Union x :e U /\ Power x :e U /\
     (forall F:set -> set, (forall y, y :e x -> F y :e U) -> Repl x F :e U)) ->
  forall x, x :e UnivOf X -> x :e U.
Axiom prop_ext : forall A B:prop, (A <-> B) -> A = B.
Axiom func_ext : forall f g:set -> set, (forall x, f x = g x) -> f = g.
Axiom pred_ext : forall P Q:set -> prop, (forall x, P x <-> Q x) -> P = Q.
)";

// The first nine theorems; `xm` is the tenth.
const char* const kIntuitionistic = R"(
Theorem TrueI : True.
exact fun p H => H.
Qed.

Theorem FalseE : forall P:prop, False -> P.
exact fun P H => H P.
Qed.

Theorem andI : forall A B:prop, A -> B -> A /\ B.
exact fun A B a b p H => H a b.
Qed.

Theorem andEL : forall A B:prop, A /\ B -> A.
exact fun A B H => H A (fun a b => a).
Qed.

Theorem andER : forall A B:prop, A /\ B -> B.
exact fun A B H => H B (fun a b => b).
Qed.

Theorem orIL : forall A B:prop, A -> A \/ B.
exact fun A B a p H1 H2 => H1 a.
Qed.

Theorem orIR : forall A B:prop, B -> A \/ B.
exact fun A B b p H1 H2 => H2 b.
Qed.

Theorem orE : forall A B C:prop, (A -> C) -> (B -> C) -> A \/ B -> C.
exact fun A B C f g H => H C f g.
Qed.

Theorem eqI : forall x:set, x = x.
exact fun x Q H => H.
Qed.
)";

const char* const kClassical = R"(
Theorem dneg : forall p:prop, ~ ~ p -> p.
exact fun p H => orE p (~ p) p (fun h => h) (fun n => FalseE p (H n)) (xm p).
Qed.
)";

void extend(kernel::Signature& sig, const std::string& text) {
  script::Development dev = script::elaborate(sig, text, script::ElaborateOptions{1});
  if (!dev.ok()) {
    const auto& d = dev.diagnostics.front();
    throw std::logic_error("basis does not check: " + d.message);
  }
  sig = dev.sig;
}

kernel::Signature build(Profile profile) {
  kernel::Signature sig;
  extend(sig, kFoundations);
  if (profile == Profile::Core) return sig;
  extend(sig, kIntuitionistic);
  using kernel::Term;
  using kernel::Type;
  kernel::Entry xm;
  xm.kind = kernel::Entry::Kind::Thm;
  xm.name = "xm";
  xm.prop = Term::all("p", Type::prop(),
                      Term::app(Term::constant("or"),
                                {Term::bvar(0), Term::app(Term::constant("not"), Term::bvar(0))}));
  xm.trusted = true;
  sig.add(std::move(xm));
  extend(sig, kClassical);
  return sig;
}

}  // namespace

const kernel::Signature& bootstrap(Profile profile) {
  static std::once_flag fullOnce, coreOnce;
  static kernel::Signature full, core;
  if (profile == Profile::Core) {
    std::call_once(coreOnce, [] { core = build(Profile::Core); });
    return core;
  }
  std::call_once(fullOnce, [] { full = build(Profile::Full); });
  return full;
}

const std::string& basisSource(Profile profile) {
  static const std::string core = kFoundations;
  static const std::string full = std::string(kFoundations) + kIntuitionistic + kClassical;
  return profile == Profile::Core ? core : full;
}

BasisManifest manifest(Profile profile) {
  BasisManifest m;
  const kernel::Signature& sig = bootstrap(profile);
  for (const auto& e : sig.entries()) {
    switch (e->kind) {
      case kernel::Entry::Kind::Prim: m.primNames.push_back(e->name); break;
      case kernel::Entry::Kind::Axiom: m.axiomNames.push_back(e->name); break;
      case kernel::Entry::Kind::Def:
        if (kernel::isLogicalConst(e->name)) m.connectiveDefs.push_back(e->name);
        break;
      case kernel::Entry::Kind::Thm: break;
    }
  }
  m.xmName = "xm";
  return m;
}

std::size_t classicalFrontier(const kernel::Signature& sig) {
  auto i = sig.indexOf("xm");
  if (!i) throw Error(ErrorCode::NoXm, "the signature has no excluded-middle theorem 'xm'");
  return *i;
}

bool hasCheckedXm(const kernel::Signature& sig) {
  auto i = sig.indexOf("xm");
  return i && !sig.at(*i).trusted && sig.at(*i).proof.has_value();
}

std::string listSignature(const kernel::Signature& sig) {
  std::ostringstream os;
  for (const auto& e : sig.entries()) {
    switch (e->kind) {
      case kernel::Entry::Kind::Prim:
        os << "Prim " << e->name << " : " << e->type->str() << "\n";
        break;
      case kernel::Entry::Kind::Def:
        os << "Def " << e->name << " : " << e->type->str() << " := "
           << kernel::printTerm(*e->definiens) << "\n";
        break;
      case kernel::Entry::Kind::Axiom:
        os << "Axiom " << e->name << " : " << kernel::printTerm(*e->prop) << "\n";
        break;
      case kernel::Entry::Kind::Thm:
        os << "Thm " << e->name << " : " << kernel::printTerm(*e->prop)
           << (e->trusted ? " [trusted]" : "") << "\n";
        break;
    }
  }
  return os.str();
}

Profile parseProfile(const std::string& name) {
  if (name == "full") return Profile::Full;
  if (name == "core") return Profile::Core;
  throw Error(ErrorCode::UnknownName, "unknown basis profile '" + name + "' (full or core)");
}

}  // namespace hammerforge::basis
