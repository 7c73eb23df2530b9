// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <gtest/gtest.h>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/error.hpp"
#include "hammerforge/kernel/kernel.hpp"
#include "hammerforge/kernel/print.hpp"
#include "hammerforge/script/elaborate.hpp"
#include "oracles.hpp"

using namespace hammerforge;
using namespace hammerforge::kernel;

namespace {

const Type o = Type::prop();
const Type i = Type::set();

Term c(const char* n) { return Term::constant(n); }

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SyntaxError;
}

const Signature& ordinalSig() {
  static Signature sig = [] {
    auto dev = script::elaborate(basis::bootstrap(), R"(
Parameter ordinal : set -> prop.
Parameter ordsucc : set -> set.
Axiom ordinal_ordsucc : forall alpha:set, ordinal alpha -> ordinal (ordsucc alpha).
)");
    return dev.sig;
  }();
  return sig;
}

}  // namespace

TEST(Typecheck, MembershipIsBinaryRelation) {
  EXPECT_EQ(typecheck(basis::bootstrap(), {}, c("In")), arrows({i, i}, o));
}

TEST(Typecheck, IdentityOnSets) {
  EXPECT_EQ(typecheck(basis::bootstrap(), {}, Term::lam("x", i, Term::bvar(0))), Type::arrow(i, i));
}

TEST(Typecheck, MembershipApplied) {
  EXPECT_EQ(typecheck(basis::bootstrap(), {}, Term::app(c("In"), {c("Empty"), c("Empty")})), o);
}

TEST(Typecheck, Errors) {
  const Signature& sig = basis::bootstrap();
  EXPECT_EQ(codeOf([&] { typecheck(sig, {}, c("nosuch")); }), ErrorCode::UnknownConst);
  EXPECT_EQ(codeOf([&] { typecheck(sig, {}, Term::app(c("Union"), c("In"))); }), ErrorCode::TypeMismatch);
  EXPECT_EQ(codeOf([&] { typecheck(sig, {}, Term::all("x", i, Term::bvar(0))); }),
            ErrorCode::NonPropQuantBody);
  EXPECT_EQ(codeOf([&] { typecheck(sig, {}, Term::imp(c("Empty"), c("True"))); }),
            ErrorCode::NonPropQuantBody);
}

TEST(Normalize, BetaStep) {
  Term t = Term::app(Term::lam("x", i, Term::bvar(0)), c("Empty"));
  EXPECT_TRUE(alphaEq(normalize(basis::bootstrap(), t), c("Empty")));
}

TEST(Normalize, UnfoldConjunction) {
  Context ctx;
  Term t = Term::app(c("and"), {Term::fvar("A"), Term::fvar("B")});
  Term want = Term::all(
      "p", o, Term::imp(Term::imp(Term::fvar("A"), Term::imp(Term::fvar("B"), Term::bvar(0))), Term::bvar(0)));
  EXPECT_TRUE(alphaEq(normalize(basis::bootstrap(), t, {"and"}), want));
}

TEST(Normalize, EtaContraction) {
  Term t = Term::lam("x", i, Term::app(Term::fvar("f"), Term::bvar(0)));
  EXPECT_TRUE(alphaEq(normalize(basis::bootstrap(), t), Term::fvar("f")));
}

TEST(Normalize, UnfoldOfNonDefinitionFails) {
  EXPECT_EQ(codeOf([] { normalize(basis::bootstrap(), c("Empty"), {"Empty"}); }), ErrorCode::UnknownConst);
}

TEST(AlphaEq, Examples) {
  EXPECT_TRUE(alphaEq(Term::lam("x", i, Term::bvar(0)), Term::lam("y", i, Term::bvar(0))));
  EXPECT_FALSE(alphaEq(c("Empty"), Term::app(c("Union"), c("Empty"))));
  EXPECT_TRUE(alphaEq(Term::all("p", o, Term::imp(Term::bvar(0), Term::bvar(0))),
                      Term::all("q", o, Term::imp(Term::bvar(0), Term::bvar(0)))));
}

TEST(CheckProof, AndIntroductionFixture) {
  auto r = checkProof(basis::bootstrap(), {}, hftest::andIProof(), hftest::andIStatement());
  EXPECT_TRUE(r.holes.empty());
}

TEST(CheckProof, TenMutantsRejected) {
  auto mutants = hftest::andIMutants();
  ASSERT_EQ(mutants.size(), 10u);
  for (const auto& m : mutants) {
    EXPECT_THROW(checkProof(basis::bootstrap(), {}, m.proof, m.claimed), Error) << m.what;
  }
}

TEST(CheckProof, AssumptionRule) {
  Context ctx;
  ctx.vars.emplace_back("A", o);
  ctx.hyps.emplace_back("h", Term::fvar("A"));
  EXPECT_NO_THROW(checkProof(basis::bootstrap(), ctx, ProofTerm::hyp("h"), Term::fvar("A")));
  EXPECT_EQ(codeOf([&] { checkProof(basis::bootstrap(), ctx, ProofTerm::hyp("g"), Term::fvar("A")); }),
            ErrorCode::UnknownHyp);
}

TEST(CheckProof, AbyHoleRecorded) {
  Context ctx;
  ctx.vars.emplace_back("alpha", i);
  ctx.hyps.emplace_back("Ha", Term::app(c("ordinal"), Term::fvar("alpha")));
  Term goal = Term::app(c("ordinal"), Term::app(c("ordsucc"), Term::fvar("alpha")));
  auto r = checkProof(ordinalSig(), ctx, ProofTerm::abyHole("p1", {"ordinal_ordsucc", "Ha"}), goal);
  ASSERT_EQ(r.holes.size(), 1u);
  EXPECT_EQ(r.holes[0].problemId, "p1");
  EXPECT_EQ(r.holes[0].deps, (std::vector<std::string>{"ordinal_ordsucc", "Ha"}));
  EXPECT_TRUE(alphaEq(r.holes[0].prop, goal));
}

TEST(CheckProof, IllTypedInstantiation) {
  ProofTerm d = ProofTerm::tapp(ProofTerm::known("ordinal_ordsucc"), c("True"));
  EXPECT_EQ(codeOf([&] { inferProof(ordinalSig(), {}, d); }), ErrorCode::IllTypedInstantiation);
  EXPECT_EQ(codeOf([&] { inferProof(ordinalSig(), {}, ProofTerm::known("nope")); }),
            ErrorCode::UnknownTheorem);
}

TEST(Match, ConjunctionPattern) {
  std::vector<Metavar> mv = {{metavarName(0), o}, {metavarName(1), o}};
  Term pat = Term::app(c("and"), {Term::fvar(metavarName(0)), Term::fvar(metavarName(1))});
  Term x = Term::fvar("x"), y = Term::fvar("y");
  Term goal = Term::app(c("and"), {Term::app(c("In"), {x, y}), Term::app(c("In"), {y, x})});
  auto s = matchConclusion(basis::bootstrap(), mv, pat, goal);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(alphaEq(applySubstitution(pat, *s), goal));
  ASSERT_EQ(s->size(), 2u);
}

TEST(Match, BareMetavariable) {
  std::vector<Metavar> mv = {{metavarName(0), o}};
  auto s = matchConclusion(basis::bootstrap(), mv, Term::fvar(metavarName(0)), c("False"));
  ASSERT_TRUE(s.has_value());
  ASSERT_EQ(s->size(), 1u);
  EXPECT_TRUE(alphaEq(s->front().second, c("False")));
}

TEST(Match, OrdinalSuccessor) {
  std::vector<Metavar> mv = {{metavarName(0), i}};
  Term pat = Term::app(c("ordinal"), Term::app(c("ordsucc"), Term::fvar(metavarName(0))));
  Term goal = Term::app(c("ordinal"), Term::app(c("ordsucc"), c("Empty")));
  auto s = matchConclusion(ordinalSig(), mv, pat, goal);
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(alphaEq(s->front().second, c("Empty")));
}

TEST(Match, AppliedMetavariableNeverMatches) {
  std::vector<Metavar> mv = {{metavarName(0), Type::arrow(i, o)}};
  Term pat = Term::all("x", i, Term::app(Term::fvar(metavarName(0)), Term::bvar(0)));
  Term goal = Term::all("x", i, Term::app(c("In"), {Term::bvar(0), c("Empty")}));
  EXPECT_FALSE(matchConclusion(basis::bootstrap(), mv, pat, goal).has_value());
}

TEST(Match, MismatchedHeads) {
  std::vector<Metavar> mv = {{metavarName(0), o}};
  Term pat = Term::app(c("not"), Term::fvar(metavarName(0)));
  EXPECT_FALSE(matchConclusion(basis::bootstrap(), mv, pat, c("True")).has_value());
}

TEST(KernelProperties, RandomTerms) {
  const Signature& sig = hftest::propertySignature();
  hftest::TermGenerator gen(20261019);
  const std::set<std::string> unfolds[] = {{}, {"and", "or", "not"}, {"iff", "and", "False"}};
  for (int n = 0; n < 1000; ++n) {
    Type ty = gen.randomType();
    Term t = gen.term(ty, 6);
    ASSERT_LE(hftest::termDepth(t), 6);
    ASSERT_EQ(typecheck(sig, {}, t), ty) << printTerm(t);
    const auto& unfold = unfolds[n % 3];
    Term nf = normalize(sig, t, unfold);
    EXPECT_EQ(typecheck(sig, {}, nf), ty) << printTerm(t);
    EXPECT_TRUE(alphaEq(normalize(sig, nf, unfold), nf)) << printTerm(t);

    Term u = hftest::rehint(t, "r");
    Term w = hftest::rehint(u, "s");
    EXPECT_TRUE(alphaEq(t, t));
    EXPECT_TRUE(alphaEq(t, u) && alphaEq(u, t));
    EXPECT_TRUE(alphaEq(u, w) && alphaEq(t, w));
    Term other = gen.term(ty, 4);
    EXPECT_EQ(alphaEq(t, other), alphaEq(other, t));
    if (ty.isArrow()) {
      Term arg = gen.term(ty.domain(), 3);
      EXPECT_TRUE(alphaEq(Term::app(t, arg), Term::app(u, hftest::rehint(arg, "q"))));
    }
    EXPECT_TRUE(alphaEq(Term::lam("a", i, t), Term::lam("b", i, u)));
    if (ty.isProp()) {
      EXPECT_TRUE(alphaEq(Term::imp(t, other), Term::imp(u, other)));
      EXPECT_TRUE(alphaEq(Term::all("a", o, t), Term::all("b", o, u)));
    }
  }
}
