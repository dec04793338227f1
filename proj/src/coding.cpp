#include "berrykit/coding.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace bk {

CodeNumber CodeNumber::from_string(const std::string& text, int base) {
  std::string s = text;
  if (base == 16 && (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)) s = s.substr(2);
  mpz_class v;
  if (s.empty() || v.set_str(s, base) != 0 || v < 0) {
    throw std::invalid_argument("not a non-negative base-" + std::to_string(base) + " integer: '" + text + "'");
  }
  return CodeNumber(v);
}

const SymbolTable& SymbolTable::standard() {
  static const SymbolTable table({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, 16);
  return table;
}

SymbolTable::SymbolTable(std::array<unsigned, kSymbols> codes, unsigned c) : codes_(codes), c_(c) {
  std::set<unsigned> seen;
  for (unsigned code : codes_) {
    if (code == 0 || code >= c_) throw std::invalid_argument("symbol codes must lie in [1, c)");
    if (!seen.insert(code).second) throw std::invalid_argument("symbol codes must be distinct");
  }
}

mpz_class SymbolTable::code(const Token& t) const {
  if (t.sym == Sym::Var) return mpz_class(c_) + t.var;
  if (t.sym == Sym::Lt) throw std::invalid_argument("'<' is surface syntax and has no code");
  return codes_[static_cast<std::size_t>(t.sym)];
}

std::optional<Token> SymbolTable::token(const mpz_class& code) const {
  if (code >= c_) {
    mpz_class idx = code - c_;
    if (!idx.fits_ulong_p() || idx.get_ui() > 0xffffffffUL) return std::nullopt;
    return Token{Sym::Var, static_cast<VarIndex>(idx.get_ui())};
  }
  for (std::size_t i = 0; i < kSymbols; ++i) {
    if (codes_[i] == code) return Token{static_cast<Sym>(i)};
  }
  return std::nullopt;
}

unsigned long SymbolTable::h(unsigned long j) const { return c_ + j; }

unsigned long nth_prime(std::size_t n) {
  static std::mutex mu;
  static std::vector<unsigned long> primes{2, 3};
  std::lock_guard lock(mu);
  while (primes.size() <= n) {
    unsigned long cand = primes.back() + 2;
    while (true) {
      bool prime = true;
      for (unsigned long p : primes) {
        if (p * p > cand) break;
        if (cand % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) break;
      cand += 2;
    }
    primes.push_back(cand);
  }
  return primes[n];
}

CodeNumber encode_tokens(const std::vector<Token>& tokens, const SymbolTable& table) {
  mpz_class acc = 1;
  mpz_class pw;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    mpz_class e = table.code(tokens[k]);
    mpz_ui_pow_ui(pw.get_mpz_t(), nth_prime(k), e.get_ui());
    acc *= pw;
  }
  return CodeNumber(acc);
}

CodeNumber encode(const Expr& e, const SymbolTable& table) { return encode_tokens(tokens_of(e, true), table); }

DecodeResult decode(const CodeNumber& n, const SymbolTable& table) {
  DecodeResult r;
  if (n.value <= 1) {
    r.error = DecodeError::NotACode;
    r.detail = n.value == 0 ? "0 is reserved" : "1 encodes the empty sequence";
    return r;
  }
  mpz_class rest = n.value;
  std::vector<Token> toks;
  for (std::size_t k = 0; rest > 1; ++k) {
    unsigned long p = nth_prime(k);
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e == 0) {
      r.error = DecodeError::NotACode;
      r.detail = "prime p" + std::to_string(k) + " = " + std::to_string(p) + " is missing from the factorisation";
      return r;
    }
    auto t = table.token(mpz_class(e));
    if (!t) {
      r.error = DecodeError::NotACode;
      r.detail = "exponent " + std::to_string(e) + " of p" + std::to_string(k) + " is not a symbol code";
      return r;
    }
    toks.push_back(*t);
  }
  try {
    r.expr = parse_tokens(toks);
  } catch (const ParseError& err) {
    r.error = DecodeError::NotWellFormed;
    r.detail = err.what();
    return r;
  }
  // Only canonical token sequences are codes.
  if (tokens_of(*r.expr, true) != toks) {
    r.expr.reset();
    r.error = DecodeError::NotWellFormed;
    r.detail = "token sequence is not in canonical form";
  }
  return r;
}

Expr decode_formula(const CodeNumber& n, const SymbolTable& table) {
  auto r = decode(n, table);
  if (!r.ok()) throw CodingError(r.error, r.detail);
  if (!r.expr->is_formula()) throw CodingError(DecodeError::NotWellFormed, "code denotes a term, not a formula");
  return *r.expr;
}

Expr naming_sentence(const Expr& mu, Nat i) { return forall(0, liff(mu, eq(var(0), numeral(i)))); }

CodeNumber f_code(Nat i, const CodeNumber& m, const SymbolTable& table) {
  return encode(naming_sentence(decode_formula(m, table), i), table);
}

unsigned long h(unsigned long j, const SymbolTable& table) {
  if (j == 0) throw std::invalid_argument("h(j) requires j >= 1");
  return table.h(j);
}

CodeNumber g(unsigned long j, const SymbolTable& table) {
  unsigned long exponent = h(j, table) * j;
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), nth_prime(j), exponent);
  return CodeNumber(v);
}

}  // namespace bk
