#include <gtest/gtest.h>

#include "berrykit/arith.hpp"
#include "berrykit/berry.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/search.hpp"
#include "berrykit/transform.hpp"

using namespace bk;

namespace {
const Theory& Q = Theory::q();
}

TEST(SearchProof, AxiomAndTautology) {
  auto ax = search_proof(q_axioms()[1], Q);
  ASSERT_TRUE(ax);
  EXPECT_EQ(ax->steps.size(), 1u);
  Expr p = eq(var(0), zero());
  auto t = search_proof(lor(p, lnot(p)), Theory::pure_logic());
  ASSERT_TRUE(t);
  EXPECT_TRUE(proves(*t, Theory::pure_logic(), lor(p, lnot(p))));
}

TEST(SearchProof, NeverProvesFalsehoods) {
  EXPECT_FALSE(search_proof(lnot(eq(zero(), zero())), Q));
  EXPECT_FALSE(search_proof(eq(numeral(2), numeral(3)), Q));
  EXPECT_FALSE(search_proof(q_axioms()[1], Theory::pure_logic()));
}

TEST(SearchProof, ClosedArithmetic) {
  Expr goal = land(eq(add(numeral(2), numeral(3)), numeral(5)), lnot(le(numeral(4), numeral(1))));
  auto d = search_proof(goal, Q);
  ASSERT_TRUE(d);
  EXPECT_TRUE(proves(*d, Q, goal));
}

TEST(SearchProof, GeneralisedEqualityRewrite) {
  Expr s0 = succ(zero());
  Expr body = limp(land(lnot(eq(s0, zero())), eq(var(0), s0)), lnot(eq(var(0), zero())));
  auto open = search_proof(body, Q);
  ASSERT_TRUE(open);
  EXPECT_TRUE(proves(*open, Q, body));
  auto closed = search_proof(forall(0, body), Q);
  ASSERT_TRUE(closed);
  EXPECT_TRUE(proves(*closed, Q, forall(0, body)));
}

TEST(SearchProof, ReproducesSigmaProofs) {
  Expr s = exists(1, eq(mul(var(1), var(1)), numeral(9)));
  auto r = prove_sigma(s);
  ASSERT_EQ(r.status, SigmaStatus::Proved);
  auto d = search_proof(s, Q);
  ASSERT_TRUE(d);
  EXPECT_TRUE(proves(*d, Q, s));
}

TEST(NamesProvable, Examples) {
  auto two = names_provable(eq(var(0), numeral(2)), 2, Q);
  EXPECT_EQ(two.verdict.kind, NamingKind::Names);
  ASSERT_TRUE(two.evidence);
  EXPECT_TRUE(proves(*two.evidence, Q, naming_sentence(eq(var(0), numeral(2)), 2)));

  auto s_eq = names_provable(eq(succ(var(0)), succ(zero())), 1, Q);
  // s v0 = s 0 holds of 0 only, so μ(1) itself is refuted.
  EXPECT_EQ(s_eq.verdict.kind, NamingKind::RefutedAt);
  EXPECT_EQ(s_eq.verdict.number, 1u);

  auto le1 = names_provable(le(var(0), zero()), 0, Q);
  EXPECT_EQ(le1.verdict.kind, NamingKind::Names);

  EXPECT_THROW(names_provable(eq(var(1), zero()), 0, Q), PreconditionError);
}

TEST(NamesProvable, RefutationEvidenceChecks) {
  Expr mu = le(var(0), numeral(1));
  auto r = names_provable(mu, 0, Q);
  ASSERT_EQ(r.verdict.kind, NamingKind::RefutedAt);
  ASSERT_TRUE(r.evidence);
  EXPECT_TRUE(proves(*r.evidence, Q, substitute(mu, 0, numeral(r.verdict.number))));
}

TEST(NamesProvable, PureLogicNeedsTautology) {
  // The naming sentence of v0 = 0 is a tautology; this one needs Q.
  auto taut = names_provable(eq(var(0), zero()), 0, Theory::pure_logic());
  EXPECT_EQ(taut.verdict.kind, NamingKind::Names);
  auto r = names_provable(eq(succ(var(0)), succ(zero())), 0, Theory::pure_logic());
  EXPECT_NE(r.verdict.kind, NamingKind::Names);
  EXPECT_EQ(names_provable(eq(succ(var(0)), succ(zero())), 0, Q).verdict.kind, NamingKind::Names);
}

TEST(NamesProvable, SoundAgainstSemantics) {
  for (const Expr& mu : enumerate_formulas(6)) {
    int named = 0;
    for (Nat i = 0; i <= 5; ++i) {
      auto r = names_provable(mu, i, Q, {16, 6});
      if (r.verdict.kind != NamingKind::Names) continue;
      ++named;
      ASSERT_TRUE(r.evidence);
      ASSERT_TRUE(proves(*r.evidence, Q, naming_sentence(mu, i))) << render(mu);
      ASSERT_EQ(names_semantic(mu, i, 16).kind, NamingKind::Names) << render(mu);
    }
    ASSERT_LE(named, 1) << render(mu);
  }
}
