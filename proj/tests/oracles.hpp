#pragma once

// Independent reference implementations used to check the library. None of
// them calls the code path it is compared against.

#include <gmpxx.h>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "berrykit/expr.hpp"
#include "berrykit/syntax.hpp"

namespace oracle {

using bk::Expr;
using bk::Kind;

// ---------------------------------------------------------------- evaluation

// Closed terms over big integers, so no overflow path exists.
inline mpz_class value(const Expr& t) {
  switch (t.kind()) {
    case Kind::Zero: return 0;
    case Kind::Succ: return value(t.operand()) + 1;
    case Kind::Add: return value(t.left()) + value(t.right());
    case Kind::Mul: return value(t.left()) * value(t.right());
    default: throw std::logic_error("oracle: open or non-term");
  }
}

// Plain replacement of free occurrences of v by a closed term.
inline Expr plug(const Expr& e, bk::VarIndex v, const Expr& closed) {
  switch (e.kind()) {
    case Kind::Zero: return e;
    case Kind::Var: return e.var() == v ? closed : e;
    case Kind::Succ: return bk::succ(plug(e.operand(), v, closed));
    case Kind::Add: return bk::add(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Mul: return bk::mul(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Eq: return bk::eq(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Le: return bk::le(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Not: return bk::lnot(plug(e.operand(), v, closed));
    case Kind::And: return bk::land(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Or: return bk::lor(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Imp: return bk::limp(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Iff: return bk::liff(plug(e.left(), v, closed), plug(e.right(), v, closed));
    case Kind::Forall: return e.var() == v ? e : bk::forall(e.var(), plug(e.body(), v, closed));
    case Kind::Exists: return e.var() == v ? e : bk::exists(e.var(), plug(e.body(), v, closed));
    case Kind::BoundedForall:
      return bk::bounded_forall(e.var(), plug(e.bound(), v, closed),
                                e.var() == v ? e.body() : plug(e.body(), v, closed));
    case Kind::BoundedExists:
      return bk::bounded_exists(e.var(), plug(e.bound(), v, closed),
                                e.var() == v ? e.body() : plug(e.body(), v, closed));
  }
  throw std::logic_error("oracle: bad node");
}

inline Expr nat(unsigned long n) {
  Expr t = bk::zero();
  for (unsigned long i = 0; i < n; ++i) t = bk::succ(t);
  return t;
}

// Substitute-and-recurse truth of a closed bounded sentence. Bounded
// quantifiers range over 0..bound-1; unbounded ones are rejected.
inline bool truth(const Expr& f) {
  switch (f.kind()) {
    case Kind::Eq: return value(f.left()) == value(f.right());
    case Kind::Le: return value(f.left()) <= value(f.right());
    case Kind::Not: return !truth(f.operand());
    case Kind::And: return truth(f.left()) && truth(f.right());
    case Kind::Or: return truth(f.left()) || truth(f.right());
    case Kind::Imp: return !truth(f.left()) || truth(f.right());
    case Kind::Iff: return truth(f.left()) == truth(f.right());
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      const bool all = f.kind() == Kind::BoundedForall;
      const unsigned long b = value(f.bound()).get_ui();
      for (unsigned long j = 0; j < b; ++j) {
        if (truth(plug(f.body(), f.var(), nat(j))) != all) return !all;
      }
      return all;
    }
    default: throw std::logic_error("oracle: not a bounded sentence");
  }
}

// ---------------------------------------------------------------- formula counts

// Counts (not generates) canonical formulas by exact length: terms of length
// p at binder depth d, split by whether the root is + or *.
class Counter {
 public:
  unsigned long long formulas(std::size_t len, std::size_t depth = 0) {
    auto key = std::make_pair(len, depth);
    if (auto it = f_.find(key); it != f_.end()) return it->second;
    unsigned long long n = 0;
    if (len >= 3)
      for (std::size_t a = 1; a + 1 < len; ++a) n += 2 * all_terms(a, depth) * all_terms(len - 1 - a, depth);
    if (len > 3) n += formulas(len - 3, depth);
    if (len > 5)
      for (std::size_t a = 1; a + 5 < len; ++a) n += 4 * formulas(a, depth) * formulas(len - 5 - a, depth);
    if (len > 6) n += 2 * formulas(len - 6, depth + 1);
    return f_[key] = n;
  }

 private:
  unsigned long long all_terms(std::size_t p, std::size_t d) { return atomic_or_succ(p, d) + binary(p, d); }

  // Operand slots of width p: bare non-binary term, or parenthesized binary.
  unsigned long long slot(std::size_t p, std::size_t d) {
    return atomic_or_succ(p, d) + (p > 2 ? binary(p - 2, d) : 0);
  }

  unsigned long long atomic_or_succ(std::size_t p, std::size_t d) {
    if (p == 0) return 0;
    if (p == 1) return 1 + (d + 1);  // 0, v0..v_d
    return slot(p - 1, d);           // s followed by an operand
  }

  unsigned long long binary(std::size_t p, std::size_t d) {
    auto key = std::make_pair(p, d);
    if (auto it = b_.find(key); it != b_.end()) return it->second;
    unsigned long long n = 0;
    for (std::size_t a = 1; a + 1 < p; ++a) n += 2 * slot(a, d) * slot(p - 1 - a, d);
    return b_[key] = n;
  }

  std::map<std::pair<std::size_t, std::size_t>, unsigned long long> f_, b_;
};

// ---------------------------------------------------------------- brute force

// Every token string of length < max_len over the symbols with v0 as the only
// variable, kept when it parses to a formula. Only valid for max_len ≤ 9,
// where no quantifier fits and v0 is the only admissible variable.
// A prefix whose parse fails before its last token cannot be extended to a
// parsable string, so it is not extended.
inline std::set<std::string> token_strings(std::size_t max_len) {
  using bk::Sym;
  using bk::Token;
  std::vector<Token> alphabet;
  for (Sym s : {Sym::Zero, Sym::S, Sym::Plus, Sym::Times, Sym::Eq, Sym::Le, Sym::Not, Sym::And, Sym::Or, Sym::Imp,
                Sym::Iff, Sym::All, Sym::Ex, Sym::LParen, Sym::RParen})
    alphabet.push_back(Token{s, 0});
  alphabet.push_back(Token{Sym::Var, 0});

  std::set<std::string> out;
  std::vector<Token> cur;
  auto visit = [&](auto&& self, std::size_t remaining) -> void {
    if (!cur.empty()) {
      try {
        Expr e = bk::parse_tokens(cur);
        if (e.is_formula()) out.insert(bk::render(e));
      } catch (const bk::ParseError& err) {
        if (err.position() < cur.size()) return;
      }
    }
    if (remaining == 0) return;
    for (const Token& t : alphabet) {
      cur.push_back(t);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  if (max_len > 1) visit(visit, max_len - 1);
  return out;
}

// ---------------------------------------------------------------- primes

inline std::vector<unsigned long> sieve(std::size_t count) {
  std::size_t limit = 16;
  for (;;) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<unsigned long> primes;
    for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    if (primes.size() == count) return primes;
    limit *= 2;
  }
}

}  // namespace oracle
