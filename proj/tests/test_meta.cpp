#include <gtest/gtest.h>

#include <algorithm>

#include "berrykit/berry.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/meta.hpp"
#include "berrykit/random.hpp"
#include "berrykit/semantics.hpp"
#include "berrykit/transform.hpp"
#include "oracles.hpp"

using namespace bk;
using Value = RelationVerdict::Value;

namespace {

const Theory& Q = Theory::q();

// Trial division over sieve primes; exponents map to symbols under the
// standard table.
std::optional<Expr> inspect(const mpz_class& n) {
  if (n < 2) return std::nullopt;
  static const auto primes = oracle::sieve(5000);
  static const Sym syms[] = {Sym::Zero, Sym::S, Sym::Plus, Sym::Times, Sym::Eq, Sym::Le, Sym::Not, Sym::And,
                             Sym::Or, Sym::Imp, Sym::Iff, Sym::All, Sym::Ex, Sym::LParen, Sym::RParen};
  mpz_class rest = n;
  std::vector<Token> toks;
  for (unsigned long p : primes) {
    if (rest == 1) break;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++e;
    }
    if (e == 0) return std::nullopt;
    toks.push_back(e >= 16 ? Token{Sym::Var, static_cast<VarIndex>(e - 16)} : Token{syms[e - 1], 0});
  }
  if (rest != 1) return std::nullopt;
  try {
    return parse_tokens(toks);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

std::vector<CodeNumber> code_corpus(std::size_t count, std::uint64_t seed) {
  RandomSyntax gen(seed);
  std::mt19937_64 rng(seed);
  std::vector<CodeNumber> out;
  while (out.size() < count) {
    switch (rng() % 5) {
      case 0: out.emplace_back(static_cast<unsigned long>(rng() % 100000)); break;
      case 1: out.push_back(encode(expand_bounded(gen.formula(3, {0})))); break;
      case 2: out.push_back(encode(expand_bounded(gen.formula(3, {})))); break;
      case 3: out.push_back(encode(gen.term(3, {0}))); break;
      default: {
        CodeNumber c = encode(expand_bounded(gen.formula(2, {0, 1})));
        c.value *= 2;  // usually breaks the token sequence
        out.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Fm, Examples) {
  EXPECT_TRUE(fm(encode(eq(var(0), zero()))));
  EXPECT_FALSE(fm(encode(eq(var(1), zero()))));
  EXPECT_TRUE(fm(encode(eq(zero(), zero()))));
  EXPECT_FALSE(fm(CodeNumber(2ul)));
  EXPECT_FALSE(fm(CodeNumber(7ul)));
}

TEST(Lh, Examples) {
  CodeNumber c = encode(eq(var(0), zero()));
  EXPECT_TRUE(lh(c, 4));
  EXPECT_FALSE(lh(c, 3));
  EXPECT_FALSE(lh(CodeNumber(7ul), 100));
}

TEST(SntNeg, Examples) {
  Expr s = eq(zero(), zero());
  EXPECT_TRUE(snt(encode(s)));
  EXPECT_FALSE(snt(encode(eq(var(0), zero()))));
  EXPECT_TRUE(neg(encode(s), encode(lnot(s))));
  EXPECT_FALSE(neg(encode(s), encode(s)));
  EXPECT_FALSE(neg(encode(eq(var(0), zero())), encode(lnot(eq(var(0), zero())))));
}

TEST(Predicates, AgreeWithDecodeThenInspect) {
  auto corpus = code_corpus(1000, 5);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const CodeNumber& c = corpus[k];
    auto e = inspect(c.value);
    const bool formula = e && e->is_formula();
    const bool only_v0 = formula && std::all_of(e->free_vars().begin(), e->free_vars().end(), [](VarIndex v) { return v == 0; });
    ASSERT_EQ(fm(c), only_v0) << c.to_string() << " " << (e ? render(*e) : "-");
    ASSERT_EQ(snt(c), formula && e->is_closed()) << c.to_string();
    for (Nat j : {3, 6, 12, 40}) ASSERT_EQ(lh(c, j), formula && length(*e) < j) << c.to_string();
    if (formula && e->is_closed()) {
      ASSERT_TRUE(neg(c, encode(lnot(*e))));
      ASSERT_FALSE(neg(c, c));
    }
    const CodeNumber& other = corpus[(k + 1) % corpus.size()];
    auto o = inspect(other.value);
    ASSERT_EQ(neg(c, other), formula && e->is_closed() && o && *o == lnot(*e));
  }
}

TEST(Nm, Examples) {
  auto yes = nm(1, encode(eq(var(0), numeral(1))), Q, 32);
  EXPECT_EQ(yes.value, Value::Holds);
  ASSERT_TRUE(yes.derivation);
  EXPECT_TRUE(proves(*yes.derivation, Q, naming_sentence(eq(var(0), numeral(1)), 1)));
  EXPECT_EQ(nm(2, encode(eq(var(0), numeral(1))), Q, 32).value, Value::NotHolds);
  EXPECT_EQ(nm(0, CodeNumber(7ul), Q, 32).value, Value::NotHolds);
  EXPECT_EQ(nm(0, encode(eq(var(1), zero())), Q, 32).value, Value::NotHolds);
}

TEST(BRel, Examples) {
  auto zero_named = b_rel(0, 6, Q, 32);
  ASSERT_EQ(zero_named.value, Value::Holds);
  ASSERT_TRUE(zero_named.witness && zero_named.derivation);
  EXPECT_LT(length(*zero_named.witness), 6u);
  EXPECT_EQ(names_semantic(*zero_named.witness, 0, 32).kind, NamingKind::Names);
  EXPECT_TRUE(proves(*zero_named.derivation, Q, naming_sentence(*zero_named.witness, 0)));

  EXPECT_EQ(b_rel(3, 6, Q, 32).value, Value::NotHolds);
  EXPECT_EQ(b_rel(0, 2, Q, 32).value, Value::NotHolds);
  EXPECT_EQ(b_rel(5, 1, Q, 32).value, Value::NotHolds);
  EXPECT_THROW(b_rel(0, 12, Q, 32), FeasibilityError);
}

TEST(BRel, WitnessIsCanonicallyFirstNamer) {
  // Brute force over token strings, canonical order by symbol codes.
  auto strings = oracle::token_strings(6);
  std::vector<Expr> namers;
  for (const auto& s : strings) {
    Expr e = parse(s);
    std::vector<Nat> holds;
    for (Nat j = 0; j <= 32; ++j)
      if (oracle::truth(oracle::plug(e, 0, oracle::nat(j)))) holds.push_back(j);
    if (holds.size() == 1 && holds[0] == 0) namers.push_back(e);
  }
  ASSERT_FALSE(namers.empty());
  auto code_key = [](const Expr& e) {
    std::vector<unsigned long> key{tokens_of(e).size()};
    for (const Token& t : tokens_of(e)) key.push_back(encode_tokens({t}).value.get_ui());
    return key;
  };
  auto first = *std::min_element(namers.begin(), namers.end(),
                                 [&](const Expr& a, const Expr& b) { return code_key(a) < code_key(b); });
  auto r = b_rel(0, 6, Q, 32);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, first);
}

TEST(BRel, AgreesWithSemanticNamersAtSmallLength) {
  // At length < 6 every semantic namer is quantifier-free, so Q decides it.
  std::set<Nat> named;
  for (const Expr& mu : enumerate_formulas(6)) {
    auto v = find_semantic_name(mu, 32);
    if (v && v->kind == NamingKind::Names) named.insert(v->number);
  }
  for (Nat i = 0; i <= 5; ++i) {
    auto r = b_rel(i, 6, Q, 32);
    EXPECT_EQ(r.value, named.count(i) ? Value::Holds : Value::NotHolds) << i;
  }
}

TEST(Prc, Examples) {
  Expr false_sentence = eq(zero(), succ(zero()));
  auto r = prc(encode(false_sentence), Q, 32);
  EXPECT_EQ(r.value, Value::Holds);
  ASSERT_TRUE(r.derivation);
  EXPECT_TRUE(proves(*r.derivation, Q, lnot(false_sentence)));
  EXPECT_EQ(prc(encode(eq(zero(), zero())), Q, 32).value, Value::Unknown);
  EXPECT_EQ(prc(encode(eq(var(0), zero())), Q, 32).value, Value::Holds);
  EXPECT_EQ(prc(CodeNumber(7ul), Q, 32).value, Value::Holds);
}

TEST(RelationVerdict, Json) {
  auto j = b_rel(0, 6, Q, 32).to_json();
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_TRUE(j.contains("witness"));
}
