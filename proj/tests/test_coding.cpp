#include <gtest/gtest.h>

#include "berrykit/coding.hpp"
#include "berrykit/random.hpp"
#include "berrykit/transform.hpp"
#include "oracles.hpp"

using namespace bk;

namespace {

// Product of p_i^code(token_i), computed from the sieve, not nth_prime.
mpz_class code_by_hand(const std::vector<Token>& toks, const SymbolTable& table) {
  auto primes = oracle::sieve(toks.size());
  mpz_class out = 1;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    mpz_class p = primes[i], e;
    mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), table.code(toks[i]).get_ui());
    out *= e;
  }
  return out;
}

SymbolTable alternative_table() {
  // Reversed codes below a larger threshold.
  std::array<unsigned, SymbolTable::kSymbols> codes{};
  for (unsigned i = 0; i < SymbolTable::kSymbols; ++i) codes[i] = 19 - i;
  return SymbolTable(codes, 21);
}

}  // namespace

TEST(Encode, Examples) {
  EXPECT_EQ(encode(zero()).value, 2);
  EXPECT_EQ(encode(succ(zero())).value, 12);
}

TEST(Encode, MatchesPrimePowerProduct) {
  RandomSyntax gen(3);
  SymbolTable alt = alternative_table();
  for (int i = 0; i < 200; ++i) {
    Expr f = gen.formula(3, {0});
    auto toks = tokens_of(f, true);
    EXPECT_EQ(encode(f).value, code_by_hand(toks, SymbolTable::standard()));
    EXPECT_EQ(encode(f, alt).value, code_by_hand(toks, alt));
  }
}

TEST(Decode, Examples) {
  auto two = decode(CodeNumber(2ul));
  ASSERT_TRUE(two.ok());
  EXPECT_EQ(*two.expr, zero());
  EXPECT_EQ(decode(CodeNumber(7ul)).error, DecodeError::NotACode);
  EXPECT_EQ(decode(CodeNumber(6ul)).error, DecodeError::NotWellFormed);
  EXPECT_EQ(decode(CodeNumber(0ul)).error, DecodeError::NotACode);
  EXPECT_EQ(decode(CodeNumber(1ul)).error, DecodeError::NotACode);
}

TEST(Decode, InverseOnSmallNumbers) {
  std::size_t decodable = 0;
  for (unsigned long n = 0; n <= 1000000; ++n) {
    auto r = decode(CodeNumber(n));
    if (!r.ok()) continue;
    ++decodable;
    ASSERT_EQ(encode(*r.expr).value, n) << n;
  }
  EXPECT_GT(decodable, 2u);
}

TEST(Decode, RoundTripRandom) {
  RandomSyntax gen(17);
  SymbolTable alt = alternative_table();
  for (int i = 0; i < 2000; ++i) {
    Expr f = expand_bounded(gen.formula(5, {0, 1}));
    auto r = decode(encode(f));
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(*r.expr, f);
    auto a = decode(encode(f, alt), alt);
    ASSERT_TRUE(a.ok());
    ASSERT_EQ(*a.expr, f);
  }
}

TEST(DecodeFormula, RejectsTermsAndNonCodes) {
  EXPECT_THROW(decode_formula(CodeNumber(2ul)), CodingError);
  EXPECT_THROW(decode_formula(CodeNumber(7ul)), CodingError);
  EXPECT_EQ(decode_formula(encode(eq(zero(), zero()))), eq(zero(), zero()));
}

TEST(Bounds, HAndG) {
  EXPECT_EQ(h(2), 18ul);
  mpz_class five36;
  mpz_ui_pow_ui(five36.get_mpz_t(), 5, 36);
  EXPECT_EQ(g(2).value, five36);
  EXPECT_THROW(h(0), std::invalid_argument);
  EXPECT_THROW(g(0), std::invalid_argument);
  EXPECT_EQ(h(4, alternative_table()), 25ul);
}

TEST(Bounds, CodeBelowG) {
  RandomSyntax gen(99);
  std::mt19937 extra(4);
  SymbolTable alt = alternative_table();
  for (int i = 0; i < 300; ++i) {
    Expr f = expand_bounded(gen.formula(3, {0}));
    const std::size_t j = length(f) + 1 + extra() % 3;
    Expr mu = rename_to_first(f, j);
    ASSERT_LT(encode(mu).value, g(j).value) << render(mu);
    ASSERT_LT(encode(mu, alt).value, g(j, alt).value) << render(mu);
  }
}

TEST(Primes, MatchSieve) {
  auto want = oracle::sieve(10000);
  for (std::size_t i = 0; i < want.size(); ++i) ASSERT_EQ(nth_prime(i), want[i]) << i;
}

TEST(SymbolTable, RejectsInvalid) {
  std::array<unsigned, SymbolTable::kSymbols> codes{};
  for (unsigned i = 0; i < SymbolTable::kSymbols; ++i) codes[i] = i + 1;
  EXPECT_NO_THROW(SymbolTable(codes, 16));
  EXPECT_THROW(SymbolTable(codes, 15), std::invalid_argument);
  auto dup = codes;
  dup[3] = dup[4];
  EXPECT_THROW(SymbolTable(dup, 16), std::invalid_argument);
  auto zeroed = codes;
  zeroed[0] = 0;
  EXPECT_THROW(SymbolTable(zeroed, 16), std::invalid_argument);
}

TEST(FCode, EncodesNamingSentence) {
  Expr mu = eq(var(0), numeral(2));
  CodeNumber m = encode(mu);
  CodeNumber f = f_code(2, m);
  EXPECT_EQ(f, encode(forall(0, liff(mu, eq(var(0), numeral(2))))));
  Expr back = decode_formula(f);
  EXPECT_TRUE(back.is_closed());
  EXPECT_THROW(f_code(1, CodeNumber(7ul)), CodingError);
}
