#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "berrykit/arith.hpp"
#include "berrykit/berry.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/random.hpp"
#include "berrykit/transform.hpp"
#include "oracles.hpp"

using namespace bk;

namespace {

std::size_t words(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

// Least number with no namer among formulas of length < L, by brute force.
Nat oracle_berry(std::size_t max_len, Nat budget) {
  std::set<Nat> named;
  for (const auto& s : oracle::token_strings(max_len)) {
    Expr e = parse(s);
    std::vector<Nat> holds;
    for (Nat j = 0; j <= budget; ++j)
      if (oracle::truth(oracle::plug(e, 0, oracle::nat(j)))) holds.push_back(j);
    if (holds.size() == 1) named.insert(holds[0]);
  }
  Nat n = 0;
  while (named.count(n)) ++n;
  return n;
}

const Expr kPhiEq = eq(var(0), var(1));

}  // namespace

TEST(Enumerate, SmallLengths) {
  EXPECT_TRUE(enumerate_formulas(3).empty());
  auto four = enumerate_formulas(4);
  std::set<std::string> texts;
  for (const Expr& e : four) texts.insert(render(e));
  EXPECT_EQ(four.size(), 8u);
  for (const char* want : {"0 = 0", "v0 = 0", "0 = v0", "v0 = v0", "0 <= 0", "v0 <= v0"})
    EXPECT_TRUE(texts.count(want)) << want;
}

TEST(Enumerate, CountsMatchIndependentCounter) {
  oracle::Counter counter;
  auto counts = formula_counts(9, 9);
  ASSERT_EQ(counts.size(), 9u);
  for (std::size_t len = 0; len < 9; ++len) EXPECT_EQ(counts[len], counter.formulas(len)) << len;
  std::vector<std::size_t> small(counts.begin(), counts.begin() + 8);
  EXPECT_EQ(small, (std::vector<std::size_t>{0, 0, 0, 8, 16, 88, 232, 568}));
}

TEST(Enumerate, SetMatchesTokenStringBruteForce) {
  std::set<std::string> engine;
  for (const Expr& e : enumerate_formulas(6)) engine.insert(render(e));
  EXPECT_EQ(engine, oracle::token_strings(6));
}

TEST(Enumerate, OrderedDistinctAndWellShaped) {
  auto all = enumerate_formulas(8);
  EXPECT_EQ(all.size(), 912u);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) ASSERT_TRUE(canonical_less(all[i], all[i + 1])) << i;
  for (const Expr& e : all) {
    for (VarIndex v : e.free_vars()) ASSERT_EQ(v, 0u);
    ASSERT_EQ(binder_normal_form(e), e);
    ASSERT_LT(length(e), 8u);
  }
}

TEST(Enumerate, Feasibility) {
  EXPECT_THROW(enumerate_formulas(9), FeasibilityError);
  EXPECT_THROW(berry_number(9, {}), FeasibilityError);
  EXPECT_NO_THROW(formula_counts(9, 9));
}

TEST(Berry, SixMatchesBruteForce) {
  const Nat want = oracle_berry(6, 32);
  EXPECT_EQ(want, 3u);
  auto r = berry_number(6, {});
  EXPECT_EQ(r.n, want);
  EXPECT_EQ(r.formulas, 112u);
  EXPECT_EQ(r.unknown, 0u);
  for (Nat i = 0; i < r.n; ++i) ASSERT_TRUE(r.table.count(i)) << i;
  EXPECT_FALSE(r.table.count(r.n));
}

TEST(Berry, SmallValues) {
  EXPECT_EQ(berry_number(2, {}).n, 0u);
  EXPECT_EQ(berry_number(7, {}).n, 4u);
  EXPECT_EQ(berry_number(8, {}).n, 5u);
}

TEST(Berry, MonotoneInLength) {
  Nat prev = 0;
  for (std::size_t len = 2; len <= 8; ++len) {
    Nat n = berry_number(len, {}).n;
    EXPECT_GE(n, prev) << len;
    prev = n;
  }
}

TEST(Berry, WitnessesAreFirstNamers) {
  auto r = berry_number(7, {});
  auto all = enumerate_formulas(7);
  for (const auto& [m, w] : r.table) {
    auto first = std::find_if(all.begin(), all.end(), [&](const Expr& e) {
      auto v = find_semantic_name(e, 32);
      return v && v->kind == NamingKind::Names && v->number == m;
    });
    ASSERT_NE(first, all.end());
    EXPECT_EQ(*first, w.formula) << m;
  }
}

TEST(Berry, ProverBackendAgreesAtSix) {
  NamingBackend prover{BackendKind::Prover, 32, &Theory::q()};
  auto r = berry_number(6, prover);
  EXPECT_EQ(r.n, 3u);
  for (const auto& [m, w] : r.table) {
    ASSERT_TRUE(w.derivation);
    EXPECT_TRUE(proves(*w.derivation, Theory::q(), naming_sentence(w.formula, m)));
  }
  EXPECT_TRUE(verify(r).ok);
}

TEST(Berry, VerifyAcceptsAndRejects) {
  auto r = berry_number(7, {});
  EXPECT_TRUE(verify(r).ok) << verify(r).reason;
  auto wrong_n = r;
  wrong_n.n += 1;
  EXPECT_FALSE(verify(wrong_n).ok);
  auto wrong_witness = r;
  wrong_witness.table.begin()->second.formula = eq(var(0), numeral(9));
  EXPECT_FALSE(verify(wrong_witness).ok);
}

TEST(Berry, ReportJson) {
  auto j = berry_number(6, {}).to_json();
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["formulas"], 112);
  EXPECT_EQ(j["backend"], "semantic");
  EXPECT_EQ(j["table"].size(), 3u);
}

TEST(Providers, Validation) {
  EXPECT_THROW(validate(MockPhi{3, 1}), PreconditionError);
  EXPECT_THROW(validate(MockPhi{4, 0}), PreconditionError);
  EXPECT_THROW(validate(ConcretePhi{eq(var(2), var(0))}), PreconditionError);
  EXPECT_NO_THROW(validate(MockPhi{4, 1}));
  EXPECT_NO_THROW(validate(ConcretePhi{kPhiEq}));
}

TEST(Psi, ConcreteShapeAndConstants) {
  PsiBuild b = build_psi(ConcretePhi{kPhiEq});
  ASSERT_TRUE(b.psi);
  const std::string want = "( ~ ( v0 = v1 ) ) & ( ( A v2 ) ( ( s v2 <= v0 ) -> ( v2 = v1 ) ) )";
  EXPECT_EQ(render(*b.psi), want);
  EXPECT_EQ(b.constants.k1, words(want));
  EXPECT_EQ(b.constants.k1, 29u);
  EXPECT_EQ(b.v1_occurrences, 2u);
  EXPECT_EQ(b.constants.k2, 3u);
  EXPECT_EQ(b.constants.k, 87u);
  EXPECT_EQ(b.constants.t_value, 10u * 87 * 87);
  EXPECT_EQ(eval_term(b.constants.t_term), b.constants.t_value);
}

TEST(Psi, TemplateOverheadIsConstant) {
  RandomSyntax gen(12);
  for (int i = 0; i < 200; ++i) {
    Expr phi = expand_bounded(gen.formula(3, {0, 1}));
    if (length(phi) < 4) continue;
    PsiBuild b = build_psi(ConcretePhi{phi});
    ASSERT_EQ(b.constants.k1, 2 * length(phi) + kPsiTemplateOverhead) << render(phi);
    ASSERT_EQ(b.v1_occurrences, count_free(*b.psi, 1));
  }
}

TEST(Psi, MockConstants) {
  PsiBuild b = build_psi(MockPhi{50, 2});
  EXPECT_FALSE(b.psi);
  EXPECT_EQ(b.constants.k1, 2u * 50 + 23);
  EXPECT_EQ(b.constants.k2, 3u);
  EXPECT_EQ(b.constants.k, 369u);
  EXPECT_EQ(b.constants.t_value, 10u * 369 * 369);
}

TEST(Bounds, MockCertificateByHand) {
  for (Nat len : {4, 10, 50, 200})
    for (Nat occ : {1, 2, 7, 20}) {
      const Nat k1 = 2 * len + 23, k2 = occ + 1, k = k1 * k2, t_len = 17 + 2 * k;
      auto c = certify_bounds(MockPhi{len, occ});
      EXPECT_EQ(c.k, k);
      EXPECT_EQ(c.t_length, t_len);
      EXPECT_EQ(c.psi_t_length, k1 + occ * (t_len + 1));
      EXPECT_EQ(c.t_value, 10 * k * k);
      EXPECT_TRUE(c.holds()) << len << ":" << occ;
      EXPECT_EQ(c.chain.size(), 5u);
    }
  auto c = certify_bounds(MockPhi{50, 2});
  EXPECT_EQ(c.t_length, 755u);
  EXPECT_EQ(c.psi_t_length, 1635u);
  EXPECT_EQ(c.t_value, 1361610u);
}

TEST(Bounds, ConcreteCertificateIsExact) {
  auto c = certify_bounds(ConcretePhi{kPhiEq});
  PsiBuild b = build_psi(ConcretePhi{kPhiEq});
  Expr psi_t = substitute(*b.psi, 1, b.constants.t_term);
  EXPECT_EQ(c.psi_t_length, words(render(psi_t)));
  EXPECT_EQ(c.psi_t_length, 409u);
  EXPECT_EQ(c.t_value, 75690u);
  EXPECT_LE(c.psi_t_length, c.k1 + c.k2 * c.t_length);
  EXPECT_TRUE(c.holds());
  auto j = c.to_json();
  EXPECT_EQ(j["k"], 87);
}

TEST(Boolos, ConcreteSentence) {
  auto s = boolos_sentence(ConcretePhi{kPhiEq}, 3);
  ASSERT_TRUE(s.sentence && s.length);
  EXPECT_TRUE(s.sentence->is_closed());
  EXPECT_EQ(*s.length, length(*s.sentence));
  EXPECT_EQ(s.text, render(*s.sentence));
  PsiBuild b = build_psi(ConcretePhi{kPhiEq});
  Expr other_order = substitute(substitute(*b.psi, 1, b.constants.t_term), 0, numeral(3));
  EXPECT_EQ(*s.sentence, other_order);
  EXPECT_LT(*s.length, b.constants.t_value);
}

TEST(Boolos, Placeholders) {
  auto symbolic = boolos_sentence(ConcretePhi{kPhiEq}, std::nullopt);
  EXPECT_FALSE(symbolic.sentence);
  EXPECT_NE(symbolic.text.find("[n]"), std::string::npos);
  auto mock = boolos_sentence(MockPhi{50, 2}, 7);
  EXPECT_FALSE(mock.sentence);
  EXPECT_FALSE(mock.length);
  EXPECT_NE(mock.text.find("phi"), std::string::npos);
}

TEST(RefuteWitnesses, RefusesAtFirstTrueInstance) {
  Expr mu = eq(add(var(0), var(1)), var(2));
  auto r = refute_witnesses(mu, 1, numeral(1), 5);
  EXPECT_TRUE(r.refused);
  EXPECT_EQ(r.refused_at, 2u);
}

TEST(RefuteWitnesses, DerivationsRefuteEachInstance) {
  Expr mu = le(succ(var(2)), var(0));
  Expr t = mul(numeral(2), numeral(3));
  for (Nat upto : {0, 6}) {
    auto r = refute_witnesses(mu, 0, t, upto);
    ASSERT_FALSE(r.refused);
    ASSERT_EQ(r.derivations.size(), upto + 1);
    for (Nat j = 0; j <= upto; ++j) {
      Expr inst = substitute(substitute(substitute(mu, 0, numeral(0)), 1, t), 2, numeral(j));
      EXPECT_TRUE(proves(r.derivations[j], Theory::q(), lnot(inst))) << j;
    }
  }
}

TEST(RefuteWitnesses, CustomWitnessVariable) {
  Expr mu = eq(add(var(1), var(3)), var(0));
  auto r = refute_witnesses(mu, 3, numeral(6), 10, 3);
  EXPECT_FALSE(r.refused);
  EXPECT_EQ(r.derivations.size(), 11u);
}

TEST(RefuteWitnesses, RequiresDelta0) {
  EXPECT_THROW(refute_witnesses(exists(3, eq(var(3), var(2))), 0, zero(), 2), PreconditionError);
}
